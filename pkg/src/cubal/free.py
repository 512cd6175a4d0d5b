"""The candidate free algebra on ``k + 1`` generators.

``F_k`` is the free Boolean algebra on ``s0..sk, t0..tk``.  Quotienting by the
ideal generated by

    s0,   u_i = s_i & ~t_i,   r_i = t0 & ~s1 & ... & ~s_i & ~t_{i+1},   q_k = t0 & ~s0 & ... & ~s_k

gives ``B_k``, and the generator intervals are ``I_i = [s_i, t_i]`` in ``I(B_k)``.
The algebra itself is ``L(X)``, the union of the localizations at the ``I_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _raw
from .boolean import BoolAlg, Element, Projection, free_boolean, quotient_by_ideal
from .cubic import Interval, caret

__all__ = [
    "ENUMERATION_LIMIT",
    "FreeInstance",
    "LIMIT",
    "atom_lineage",
    "build",
    "build_LX",
    "delta_sequence",
    "generator_names",
    "ideal_generators",
    "new_atom",
    "relation_Q",
    "relation_R",
    "relations_equivalence_check",
    "sigma_tau",
]

LIMIT = 7  # largest k for building B_k (F_7 has 2**16 atoms)
ENUMERATION_LIMIT = 2  # largest k whose interval space 3**atoms is enumerated


def generator_names(k: int) -> list[str]:
    return [f"s{i}" for i in range(k + 1)] + [f"t{i}" for i in range(k + 1)]


def _s(A: BoolAlg, i: int) -> Element:
    return A[f"s{i}"]


def _t(A: BoolAlg, i: int) -> Element:
    return A[f"t{i}"]


def _not_s_run(A: BoolAlg, first: int, last: int) -> Element:
    """``~s_first & ... & ~s_last``; the top when the range is empty."""
    return A.meet_all(~_s(A, j) for j in range(first, last + 1))


def ideal_generators(k: int, F: BoolAlg) -> list[Element]:
    """``s0``, the ``u_i``, the ``r_i`` and ``q_k``, in that order."""
    return [elem for _, elem in named_ideal_generators(k, F)]


def named_ideal_generators(k: int, F: BoolAlg) -> list[tuple[str, Element]]:
    out = [("Z", _s(F, 0))]
    out += [(f"S{i}", _s(F, i) & ~_t(F, i)) for i in range(k + 1)]
    out += [(f"R{i}", _t(F, 0) & _not_s_run(F, 1, i) & ~_t(F, i + 1)) for i in range(k)]
    out.append((f"Q{k}", _t(F, 0) & _not_s_run(F, 0, k)))
    return out


@dataclass(frozen=True)
class FreeInstance:
    k: int
    F: BoolAlg
    B: BoolAlg
    projection: Projection = field(repr=False)
    gens: tuple[Interval, ...] = field(repr=False)

    @property
    def m(self) -> int:
        return self.k + 1

    def s(self, i: int) -> Element:
        return _s(self.B, i)

    def t(self, i: int) -> Element:
        return _t(self.B, i)

    @cached_property
    def LX(self) -> list[Interval]:
        return build_LX(self)

    def to_json(self, lx_size: int | None = None) -> dict:
        return {
            "k": self.k,
            "generators": list(self.B.names),
            "atom_count": self.B.atom_count,
            "atom_labels": [list(lab) for lab in self.B.atom_labels],
            "generator_intervals": [
                {"lo": sorted(I.lo), "hi": sorted(I.hi)} for I in self.gens
            ],
            "lx_size": lx_size,
        }


def build(k: int) -> FreeInstance:
    """Construct ``B_k`` with its generator intervals.

    Interval enumeration (``build_LX``) is further limited to
    ``k <= ENUMERATION_LIMIT``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > LIMIT:
        raise ValueError(f"k={k} too large: F_k has 2**{2 * k + 2} atoms (limit k <= {LIMIT})")
    F = free_boolean(generator_names(k))
    B, proj = quotient_by_ideal(F, ideal_generators(k, F))
    gens = tuple(Interval(B[f"s{i}"], B[f"t{i}"]) for i in range(k + 1))
    return FreeInstance(k, F, B, proj, gens)


def sigma_tau_in(A: BoolAlg, k: int) -> list[tuple[Element, Element]]:
    """The ``(sigma_i, tau_i)`` recurrence evaluated in any algebra with ``s_i, t_i``."""
    sigma, tau = _s(A, 0), _t(A, 0)
    out = [(sigma, tau)]
    for i in range(1, k + 1):
        sigma, tau = sigma | (tau & ~_t(A, i)), sigma | (tau & ~_s(A, i))
        out.append((sigma, tau))
    return out


def sigma_tau(inst: FreeInstance) -> list[tuple[Element, Element]]:
    return sigma_tau_in(inst.B, inst.k)


def delta_sequence(inst: FreeInstance) -> list[Interval]:
    """``delta_0 = I_0``, ``delta_{i+1} = delta_i ^ I_{i+1}``."""
    seq = [inst.gens[0]]
    for I in inst.gens[1:]:
        seq.append(caret(seq[-1], I))
    return seq


def relation_R(l: int, k: int, i: int, t: Element, alpha: Element) -> bool:
    """``t <= s_l | ... | s_i | t_{i+1} | alpha`` in the algebra of ``t``."""
    A = t.alg
    if l < 0 or i < -1 or i + 1 > k:
        raise ValueError(f"R_{{{l},{k},{i}}}: indices out of range")
    bound = A.join_all(_s(A, j) for j in range(l, i + 1)) | _t(A, i + 1) | alpha
    return t <= bound


def relation_Q(l: int, k: int, t: Element, alpha: Element) -> bool:
    """``t <= s_l | ... | s_k | alpha`` in the algebra of ``t``."""
    A = t.alg
    if l < 0 or l > k + 1:
        raise ValueError(f"Q_{{{l},{k}}}: indices out of range")
    bound = A.join_all(_s(A, j) for j in range(l, k + 1)) | alpha
    return t <= bound


def defining_relations_hold(A: BoolAlg, k: int) -> dict[str, bool]:
    """Truth of ``Z``, every ``R_j`` (``0 <= j < k``) and ``Q_k`` in ``A``."""
    t0, zero = _t(A, 0), A.bottom
    out = {"Z": _s(A, 0) <= zero}
    for j in range(k):
        out[f"R{j}"] = relation_R(1, k, j, t0, zero)
    out[f"Q{k}"] = relation_Q(1, k, t0, zero)
    return out


@dataclass
class EquivalenceCase:
    relations: tuple[str, ...]
    sigma_tau_zero: bool
    relations_hold: bool

    @property
    def agrees(self) -> bool:
        return self.sigma_tau_zero == self.relations_hold


@dataclass
class EquivalenceReport:
    k: int
    cases: list[EquivalenceCase]

    @property
    def passed(self) -> bool:
        return all(c.agrees for c in self.cases)


def relations_equivalence_check(k: int, max_cases: int = 256, seed: int = 0) -> EquivalenceReport:
    """``sigma_k = tau_k = 0`` iff ``Z``, all ``R_j`` and ``Q_k`` hold.

    Checked in ``F_k`` itself and in the quotients of ``F_k`` by every
    ``s_i <= t_i`` plus a subset of ``{Z, R_0..R_{k-1}, Q_k}``; all subsets
    when there are at most ``max_cases`` of them, else a seeded sample that
    always contains the empty and the full subset.
    """
    if k > 5:
        raise ValueError("relations_equivalence_check supports k <= 5")
    F = free_boolean(generator_names(k))
    named = named_ideal_generators(k, F)
    base = [e for name, e in named if name.startswith("S")]
    optional = [(name, e) for name, e in named if not name.startswith("S")]
    subsets = list(itertools.product((False, True), repeat=len(optional)))
    if len(subsets) > max_cases:
        rng = np.random.default_rng(seed)
        picks = rng.choice(len(subsets), max_cases - 2, replace=False)
        chosen = {0, len(subsets) - 1} | {int(p) for p in picks}
        subsets = [subsets[i] for i in sorted(chosen)]

    def case(A: BoolAlg, label: tuple[str, ...]) -> EquivalenceCase:
        sigma, tau = sigma_tau_in(A, k)[-1]
        return EquivalenceCase(label, not sigma and not tau, all(defining_relations_hold(A, k).values()))

    cases = [case(F, ("<free>",))]
    for mask in subsets:
        picked = [(n, e) for (n, e), on in zip(optional, mask) if on]
        A, _ = quotient_by_ideal(F, base + [e for _, e in picked])
        cases.append(case(A, tuple(["S*"] + [n for n, _ in picked])))
    return EquivalenceReport(k, cases)


def new_atom(inst: FreeInstance) -> Element:
    """``a_k = t0 & ~s1 & ... & ~s_{k-1}`` in ``B_k``."""
    B, k = inst.B, inst.k
    return _t(B, 0) & _not_s_run(B, 1, k - 1)


def _drop_last(label: Sequence[int], k: int) -> tuple[int, ...]:
    # label over s0..sk, t0..tk -> label over s0..s_{k-1}, t0..t_{k-1}
    return tuple(label[:k]) + tuple(label[k + 1 : 2 * k + 1])


@dataclass
class Lineage:
    """How the atoms of ``B_k`` arise from those of ``B_{k-1}``.

    ``parent[i]`` is the index of the ``B_{k-1}`` atom below which atom ``i`` of
    ``B_k`` lies (in ``F_k``), or ``None`` for the new atom.  ``step[i]`` is
    ``"s"``, ``"~t"`` or ``"~s&t"`` according to the signs of ``s_k, t_k``.
    """

    k: int
    parent: list[int | None]
    step: list[str | None]

    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, p in enumerate(self.parent):
            if p is not None:
                out.setdefault(p, []).append(i)
        return out

    @property
    def new_atoms(self) -> list[int]:
        return [i for i, p in enumerate(self.parent) if p is None]


_STEP = {(1, 1): "s", (-1, -1): "~t", (-1, 1): "~s&t", (1, -1): "s&~t"}


def atom_lineage(prev: FreeInstance, inst: FreeInstance) -> Lineage:
    if inst.k != prev.k + 1:
        raise ValueError("lineage needs consecutive instances")
    k = inst.k
    index = {lab: i for i, lab in enumerate(prev.B.atom_labels)}
    parent: list[int | None] = []
    step: list[str | None] = []
    for lab in inst.B.atom_labels:
        p = index.get(_drop_last(lab, k))
        parent.append(p)
        step.append(None if p is None else _STEP[(lab[k], lab[2 * k + 1])])
    return Lineage(k, parent, step)


def _lx_mask(inst: FreeInstance) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = inst.B.atom_count
    lo, hi = _raw.interval_space(n)
    full = np.uint64(inst.B.full)
    keep = np.zeros(len(lo), dtype=bool)
    for I in inst.gens:
        keep |= _raw.preceq(np.uint64(I.lo.bits), np.uint64(I.hi.bits), lo, hi, full)
    return lo, hi, keep


def lx_codes(inst: FreeInstance) -> np.ndarray:
    """Packed ``lo << n | hi`` codes of ``L(X)``, sorted."""
    if inst.k > ENUMERATION_LIMIT:
        raise ValueError(f"L(X) enumeration limited to k <= {ENUMERATION_LIMIT}")
    lo, hi, keep = _lx_mask(inst)
    return np.sort(_raw.pack(lo[keep], hi[keep], inst.B.atom_count))


def build_LX(inst: FreeInstance) -> list[Interval]:
    """``L(X)``: every interval of ``I(B_k)`` lying in some localization at an ``I_i``."""
    if inst.k > ENUMERATION_LIMIT:
        raise ValueError(f"L(X) enumeration limited to k <= {ENUMERATION_LIMIT}")
    lo, hi, keep = _lx_mask(inst)
    B = inst.B
    return [Interval.from_bits(B, int(a), int(b)) for a, b in zip(lo[keep], hi[keep])]
