"""Interval operations on raw ``(lo, hi)`` bit masks.

Every function here works unchanged on Python ints and on numpy unsigned
integer arrays, which is what lets the enumeration and closure engines run
vectorized while sharing one set of formulas with :mod:`cubal.cubic`.
"""

from __future__ import annotations

import os

import numpy as np


def join(a0, a1, b0, b1):
    return a0 & b0, a1 | b1


def leq(x0, x1, y0, y1):
    """``[x0, x1] <= [y0, y1]``: containment of intervals."""
    return ((y0 & ~x0) == 0) & ((x1 & ~y1) == 0)


def delta(y0, y1, x0, x1, full):
    return y0 | (y1 & (full ^ x1)), y1 & (y0 | (full ^ x0))


# Same expression as delta, but meaningful for any pair: a meet Delta(a v w, w).
caret = delta


def preceq(a0, a1, w0, w1, full):
    j0, j1 = join(a0, a1, w0, w1)
    d0, d1 = delta(j0, j1, w0, w1, full)
    return leq(a0, a1, d0, d1)


def interval_space(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All ``3**n`` intervals of a Boolean algebra with ``n`` atoms.

    Returned as ``(lo, hi)`` uint64 arrays sorted by ``(lo, hi)``.
    """
    if n > 20:
        raise ValueError(f"interval space of {n} atoms is too large to enumerate")
    codes = np.arange(3**n, dtype=np.int64)
    lo = np.zeros(3**n, dtype=np.uint64)
    hi = np.zeros(3**n, dtype=np.uint64)
    for i in range(n):
        digit = codes % 3
        codes //= 3
        bit = np.uint64(1 << i)
        # 0: atom outside, 1: atom free (hi only), 2: atom inside
        lo |= np.where(digit == 2, bit, np.uint64(0))
        hi |= np.where(digit >= 1, bit, np.uint64(0))
    order = np.lexsort((hi, lo))
    return lo[order], hi[order]


def pack(lo, hi, n: int):
    """Encode an interval as one integer ``lo << n | hi``."""
    if isinstance(lo, np.ndarray):
        return (lo.astype(np.uint64) << np.uint64(n)) | hi.astype(np.uint64)
    return (lo << n) | hi


def unpack(code, n: int):
    mask = (1 << n) - 1
    if isinstance(code, np.ndarray):
        return code >> np.uint64(n), code & np.uint64(mask)
    return code >> n, code & mask


def worker_count() -> int:
    """Worker cap taken from ``CUBAL_THREADS`` (default: CPU count)."""
    raw = os.environ.get("CUBAL_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"CUBAL_THREADS must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1
