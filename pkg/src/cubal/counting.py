"""Exact atom and size counts for the free cubic algebra.

Everything here is integer arithmetic; ``(2/3)**l`` factors are always
evaluated as ``3**(k - l) * 2**l``.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from .boolean import AlgebraMismatch, BoolAlg
from .cubic import Interval, interval_delta, interval_join
from .free import FreeInstance

__all__ = [
    "alpha_distinct_meet",
    "alpha_star",
    "alpha_total",
    "atoms_in_upper_interval",
    "embedding_upper_bound",
    "eta",
    "eta_closed_form",
    "free_algebra_size",
    "localization_size",
    "phi",
    "size_table",
]


def alpha_total(k: int) -> int:
    """Number of atoms of ``B_k``: ``(3**(k+1) - 1) / 2``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return (3 ** (k + 1) - 1) // 2


def alpha_distinct_meet(k: int, n: int) -> int:
    """Atoms of ``B_k`` below a meet of ``n`` distinct factors ``~s_j & t_j``."""
    if k < 0 or not 0 <= n <= k + 1:
        raise ValueError(f"need 0 <= n <= k + 1, got k={k}, n={n}")
    return (3 ** (k + 1 - n) - 1) // 2


def alpha_star(B: BoolAlg, x: Interval) -> int:
    """Atoms below ``~x.lo & x.hi``."""
    if x.alg is not B:
        raise AlgebraMismatch("interval does not belong to this algebra")
    return len(~x.lo & x.hi)


def atoms_in_upper_interval(B: BoolAlg, x: Interval) -> int:
    """Number of atoms of the lattice ``[x, 1]`` in ``I(B)``."""
    return B.atom_count - alpha_star(B, x)


def localization_size(B: BoolAlg, x: Interval) -> int:
    return 3 ** atoms_in_upper_interval(B, x)


def eta(inst: FreeInstance, J: Sequence[int]) -> list[Interval]:
    """``eta_0 = I_{j0}``, ``eta_{i+1} = eta_i v Delta(eta_i v I_{j_{i+1}}, I_{j_{i+1}})``.

    ``J`` is read in increasing order.
    """
    J = sorted(set(J))
    if not J:
        raise ValueError("eta needs a non-empty index set")
    if J[0] < 0 or J[-1] > inst.k:
        raise ValueError(f"indices {J} outside 0..{inst.k}")
    seq = [inst.gens[J[0]]]
    for j in J[1:]:
        I = inst.gens[j]
        prev = seq[-1]
        seq.append(interval_join(prev, interval_delta(interval_join(prev, I), I)))
    return seq


def eta_closed_form(inst: FreeInstance, J: Sequence[int], i: int) -> Interval:
    """``[s_j0 & AND_p (s_jp | ~t_jp), t_j0 | OR_p (~s_jp & t_jp)]`` over ``p = 1..i``."""
    J = sorted(set(J))
    lo, hi = inst.s(J[0]), inst.t(J[0])
    for j in J[1 : i + 1]:
        lo = lo & (inst.s(j) | ~inst.t(j))
        hi = hi | (~inst.s(j) & inst.t(j))
    return Interval(lo, hi)


def phi(k: int, l: int) -> int:
    """``3**k * (2/3)**l`` as the integer ``3**(k-l) * 2**l``."""
    if k < 0 or l < 0:
        raise ValueError("phi needs non-negative arguments")
    if l > k:
        raise ValueError(f"phi({k}, {l}) is not an integer")
    return 3 ** (k - l) * 2**l


def free_algebra_size(m: int) -> int:
    """Size of the free cubic implication algebra on ``m >= 1`` generators."""
    if m < 1:
        raise ValueError("the construction needs at least one generator (m >= 1)")
    k = m - 1
    return sum((-1) ** (i + 1) * comb(k + 1, i) * 3 ** phi(k, i - 1) for i in range(1, k + 2))


def embedding_upper_bound(m: int) -> int:
    """``3**(2**(2m))``: the size of ``I(F_{m-1})``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return 3 ** (2 ** (2 * m))


def size_table(n: int) -> list[dict[str, int]]:
    return [
        {
            "m": m,
            "atoms": alpha_total(m - 1),
            "size": free_algebra_size(m),
            "upper_bound": embedding_upper_bound(m),
        }
        for m in range(1, n + 1)
    ]
