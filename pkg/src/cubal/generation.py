"""Checking that the generator intervals cubically generate ``L(X)``.

The closure engine works on packed interval codes (``lo << n | hi``) and
expands each wave of new elements against everything seen so far, so every
pair is combined exactly once.  The R map, the ``J`` intervals and the
association predicates are the bookkeeping behind the generation argument;
each of their properties is exposed as a check in :func:`lemma_checks`.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _raw
from .boolean import Element
from .counting import atoms_in_upper_interval, eta, eta_closed_form, phi
from .cubic import (
    Interval,
    SignedSet,
    interval_delta,
    interval_join,
    signed_sets,
    top_interval,
)
from .free import (
    FreeInstance,
    atom_lineage,
    build,
    delta_sequence,
    lx_codes,
    new_atom,
    sigma_tau,
)

__all__ = [
    "AssociationKind",
    "ClosureResult",
    "GenerationReport",
    "associated",
    "atom_for_signed_set",
    "cubic_closure",
    "j_interval",
    "lemma_checks",
    "r_map",
    "r_map_inductive",
    "rshape_atom",
    "verify_generation",
]

_CHUNK = 1 << 22  # candidate pairs per vectorized block


@dataclass
class ClosureResult:
    elements: list[Interval]
    complete: bool
    waves: int

    def __len__(self) -> int:
        return len(self.elements)


class _Seen:
    """Membership for packed codes: a flat bitmap when small, else a sorted array."""

    def __init__(self, bits: int) -> None:
        self.table = np.zeros(1 << bits, dtype=bool) if bits <= 28 else None
        self.sorted = np.zeros(0, dtype=np.uint64)

    def contains(self, codes: np.ndarray) -> np.ndarray:
        if self.table is not None:
            return self.table[codes]
        pos = np.searchsorted(self.sorted, codes)
        pos = np.minimum(pos, max(len(self.sorted) - 1, 0))
        return (self.sorted[pos] == codes) if len(self.sorted) else np.zeros(len(codes), bool)

    def add(self, codes: np.ndarray) -> None:
        if self.table is not None:
            self.table[codes] = True
        else:
            self.sorted = np.union1d(self.sorted, codes)


def _closure_codes(
    seed: np.ndarray,
    n: int,
    limit: int | None = None,
    progress: Callable[[int, int], None] | None = None,
    progress_every: int = 1,
) -> tuple[np.ndarray, bool, int]:
    full = np.uint64((1 << n) - 1)
    seen = _Seen(2 * n)
    top = np.array([_raw.pack(0, (1 << n) - 1, n)], dtype=np.uint64)
    frontier = np.unique(np.concatenate([seed.astype(np.uint64), top]))
    seen.add(frontier)
    order = frontier.copy()
    waves = 0
    workers = _raw.worker_count()

    def expand(block: np.ndarray, s0: np.ndarray, s1: np.ndarray) -> np.ndarray:
        f0, f1 = _raw.unpack(block, n)
        f0, f1 = f0[:, None], f1[:, None]
        j0, j1 = _raw.join(f0, f1, s0, s1)
        below = _raw.leq(s0, s1, f0, f1)  # seen element under frontier element
        above = _raw.leq(f0, f1, s0, s1)
        d0, d1 = _raw.delta(f0, f1, s0, s1, full)
        e0, e1 = _raw.delta(s0, s1, f0, f1, full)
        out = [_raw.pack(j0, j1, n).ravel()]
        out.append(_raw.pack(d0[below], d1[below], n))
        out.append(_raw.pack(e0[above], e1[above], n))
        cand = np.concatenate(out)
        cand = cand[~seen.contains(cand)]
        return np.unique(cand)

    while len(frontier):
        waves += 1
        s0, s1 = _raw.unpack(order, n)
        s0, s1 = s0[None, :], s1[None, :]
        rows = max(1, _CHUNK // max(len(order), 1))
        blocks = [frontier[i : i + rows] for i in range(0, len(frontier), rows)]
        if workers > 1 and len(blocks) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(lambda b: expand(b, s0, s1), blocks))
        else:
            parts = [expand(b, s0, s1) for b in blocks]
        fresh = np.unique(np.concatenate(parts)) if parts else np.zeros(0, np.uint64)
        seen.add(fresh)
        order = np.concatenate([order, fresh])
        frontier = fresh
        if progress is not None and waves % progress_every == 0:
            progress(waves, len(order))
        if limit is not None and len(order) > limit:
            return np.sort(order), False, waves
    return np.sort(order), True, waves


def cubic_closure(
    seed: Iterable[Interval],
    limit: int | None = None,
    progress: Callable[[int, int], None] | None = None,
    progress_every: int = 1,
) -> ClosureResult:
    """Least set containing ``seed`` and the top, closed under join and Delta.

    When more than ``limit`` elements appear the partial set is returned with
    ``complete=False``.
    """
    seed = list(seed)
    if not seed:
        raise ValueError("closure needs a non-empty seed")
    B = seed[0].alg
    if any(w.alg is not B for w in seed):
        raise ValueError("seed intervals come from different algebras")
    n = B.atom_count
    if n > 31:
        raise ValueError("closure engine supports at most 31 atoms")
    codes = np.array([_raw.pack(w.lo.bits, w.hi.bits, n) for w in seed], dtype=np.uint64)
    out, complete, waves = _closure_codes(codes, n, limit, progress, progress_every)
    lo, hi = _raw.unpack(out, n)
    elems = [Interval.from_bits(B, int(a), int(b)) for a, b in zip(lo, hi)]
    return ClosureResult(elems, complete, waves)


@dataclass
class GenerationReport:
    k: int
    closure_size: int
    lx_size: int
    equal: bool
    complete: bool = True
    witness: Interval | None = None

    def to_json(self) -> dict:
        w = self.witness
        return {
            "k": self.k,
            "closure_size": self.closure_size,
            "lx_size": self.lx_size,
            "equal": self.equal,
            "witness": None if w is None else {"lo": sorted(w.lo), "hi": sorted(w.hi)},
        }


def verify_generation(
    inst: FreeInstance,
    limit: int | None = None,
    progress: Callable[[int, int], None] | None = None,
    progress_every: int = 1,
) -> GenerationReport:
    """Compare the closure of ``I_0..I_k`` with ``L(X)`` as sets."""
    n = inst.B.atom_count
    lx = lx_codes(inst)
    seed = np.array([_raw.pack(I.lo.bits, I.hi.bits, n) for I in inst.gens], dtype=np.uint64)
    closed, complete, _ = _closure_codes(seed, n, limit, progress, progress_every)
    if not complete:
        raise RuntimeError(f"closure exceeded limit {limit} after {len(closed)} elements")
    diff = np.setxor1d(closed, lx)
    witness = None
    if len(diff):
        lo, hi = _raw.unpack(diff[:1], n)
        witness = Interval.from_bits(inst.B, int(lo[0]), int(hi[0]))
    return GenerationReport(inst.k, len(closed), len(lx), len(diff) == 0, complete, witness)


# --- R map, J intervals, association ---------------------------------------


def _atom_index(inst: FreeInstance, atom: Element) -> int:
    if atom.alg is not inst.B or not atom.is_atom():
        raise ValueError(f"{atom!r} is not an atom of B_{inst.k}")
    return atom.bits.bit_length() - 1


def r_map(inst: FreeInstance, atom: Element) -> SignedSet:
    """``<{j : a <= s_j}, {j : a <= ~t_j}>``."""
    _atom_index(inst, atom)
    r = range(inst.k + 1)
    return SignedSet(
        frozenset(j for j in r if atom <= inst.s(j)),
        frozenset(j for j in r if atom <= ~inst.t(j)),
    )


def r_map_inductive(inst: FreeInstance) -> list[SignedSet]:
    """R for every atom of ``B_k`` (by index), following the atoms' lineage.

    Base: the single atom of ``B_0`` gets ``<{}, {0}>``.  Step ``k``: children
    ``a & s_k``, ``a & ~t_k``, ``a & ~s_k & t_k`` get ``k`` added to the left
    half, to the right half, or nothing; the new atom gets ``<{k}, {}>``.
    """
    R = [SignedSet(frozenset(), frozenset({0}))]
    prev = build(0)
    for k in range(1, inst.k + 1):
        cur = inst if k == inst.k else build(k)
        lin = atom_lineage(prev, cur)
        nxt = []
        for p, step in zip(lin.parent, lin.step):
            if p is None:
                nxt.append(SignedSet(frozenset({k}), frozenset()))
            elif step == "s":
                nxt.append(SignedSet(R[p].A0 | {k}, R[p].A1))
            elif step == "~t":
                nxt.append(SignedSet(R[p].A0, R[p].A1 | {k}))
            elif step == "~s&t":
                nxt.append(R[p])
            else:
                raise AssertionError(f"atom survives with s_{k} & ~t_{k}")
        R, prev = nxt, cur
    return R


def rshape_atom(inst: FreeInstance, s: SignedSet) -> Element:
    """Rebuild an atom from its signed set.

    With ``j = min(A0 | A1)``: for ``j = 0`` the meet of ``s_p`` (p in A0),
    ``~t_q`` (q in A1) and ``~s_r & t_r`` for every other ``r``; for ``j > 0``
    additionally ``t0 & ~s_0 & ... & ~s_{j-1}``, with the ``~s_r & t_r``
    factors only for ``r > j``.
    """
    if s.is_top():
        raise ValueError("the top signed set names no atom")
    B, k = inst.B, inst.k
    if max(s.A0 | s.A1) > k:
        raise ValueError(f"{s} has indices outside 0..{k}")
    j = min(s.A0 | s.A1)
    e = B.meet_all(inst.s(p) for p in s.A0) & B.meet_all(~inst.t(q) for q in s.A1)
    rest = [r for r in range(k + 1) if r not in s.A0 | s.A1 and r > j]
    e = e & B.meet_all(~inst.s(r) & inst.t(r) for r in rest)
    if j > 0:
        e = e & inst.t(0) & B.meet_all(~inst.s(i) for i in range(j))
    return e


def atom_for_signed_set(inst: FreeInstance, s: SignedSet) -> Element:
    """An atom ``a`` with ``R(a)`` equal to ``s`` or to ``s`` swapped.

    When the least index is 0 the pair is oriented so that 0 sits in the right
    half; otherwise so that the least index sits in the left half.
    """
    if s.is_top():
        raise ValueError("no atom corresponds to the top signed set")
    j = min(s.A0 | s.A1)
    if (j == 0) == (j in s.A0):
        s = s.swap()
    a = rshape_atom(inst, s)
    if not a.is_atom():
        raise AssertionError(f"construction for {s} gave {len(a)} atoms")
    return a


def j_interval(inst: FreeInstance, s: SignedSet) -> Interval:
    """``J(A0, A1)``: join of ``I_j`` (j in A0) and ``Delta(1, I_l)`` (l in A1)."""
    one = top_interval(inst.B)
    parts = [inst.gens[j] for j in sorted(s.A0)]
    parts += [interval_delta(one, inst.gens[l]) for l in sorted(s.A1)]
    if not parts:
        return one
    out = parts[0]
    for p in parts[1:]:
        out = interval_join(out, p)
    return out


class AssociationKind(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"
    NONE = "none"


def associated(inst: FreeInstance, atom: Element, x: Interval) -> AssociationKind:
    _atom_index(inst, atom)
    left = atom <= x.lo
    right = atom <= ~x.hi
    if left and right:
        # lo <= hi rules this out
        raise AssertionError(f"{atom!r} both left- and right-associated with {x!r}")
    if left:
        return AssociationKind.LEFT
    if right:
        return AssociationKind.RIGHT
    return AssociationKind.NONE


def covers_above(x: Interval) -> list[Interval]:
    """Atoms of ``[x, 1]`` in ``I(B)``: ``[x.lo - a, x.hi]`` and ``[x.lo, x.hi | a]``."""
    B = x.alg
    out = []
    for a in B.atoms():
        if a <= x.lo:
            out.append(Interval(x.lo - a, x.hi))
        elif a <= ~x.hi:
            out.append(Interval(x.lo, x.hi | a))
    return out


def atoms_above_first_generator(inst: FreeInstance) -> list[Interval]:
    """``[0, t0 | a]`` for every atom ``a <= ~t0``."""
    B = inst.B
    t0 = inst.t(0)
    return [Interval(B.bottom, t0 | a) for a in B.atoms() if a <= ~t0]


# --- lemma suite -----------------------------------------------------------


@dataclass
class LemmaCheck:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"[{status}] {self.name} ({self.cases} cases){extra}"


def _check(name: str, cases: Iterable, pred: Callable) -> LemmaCheck:
    n = 0
    for case in cases:
        n += 1
        if not pred(case):
            return LemmaCheck(name, False, n, f"counterexample: {case!r}")
    return LemmaCheck(name, True, n)


def lemma_checks(inst: FreeInstance) -> list[LemmaCheck]:
    """Every per-instance lemma about ``B_k``, R, J and eta, as executable checks."""
    k, B = inst.k, inst.B
    atoms = B.atoms()
    X = range(k + 1)
    out: list[LemmaCheck] = []

    st = sigma_tau(inst)
    ds = delta_sequence(inst)
    out.append(_check("sigma_i <= tau_i", st, lambda p: p[0] <= p[1]))
    out.append(_check("delta_i = [sigma_i, tau_i]", zip(ds, st), lambda p: p[0] == Interval(*p[1])))
    out.append(_check("delta_k = [0, 0]", [ds[-1]], lambda d: not d.lo and not d.hi))
    if k >= 1:
        out.append(_check("new atom a_k is an atom", [new_atom(inst)], lambda a: a.is_atom()))
        prev = build(k - 1)
        lin = atom_lineage(prev, inst)
        kids = lin.children()
        out.append(
            _check(
                "each B_{k-1} atom splits into s, ~t, ~s&t",
                range(prev.B.atom_count),
                lambda p: sorted(lin.step[c] for c in kids.get(p, [])) == ["s", "~s&t", "~t"],
            )
        )
        out.append(
            _check(
                "the only unsplit atom is a_k",
                [lin.new_atoms],
                lambda new: len(new) == 1 and B.atom(new[0]) == new_atom(inst),
            )
        )

    R = [r_map(inst, a) for a in atoms]
    Rind = r_map_inductive(inst)
    out.append(_check("R injective", [R], lambda rs: len(set(rs)) == len(rs)))
    out.append(_check("inductive R = closed-form R", zip(Rind, R), lambda p: p[0] == p[1]))
    out.append(_check("atom rebuilt from R(a)", zip(atoms, R), lambda p: rshape_atom(inst, p[1]) == p[0]))
    out.append(
        _check(
            "a left-associated with J(R(a))",
            zip(atoms, R),
            lambda p: associated(inst, p[0], j_interval(inst, p[1])) is AssociationKind.LEFT,
        )
    )
    nontop = [s for s in signed_sets(X) if not s.is_top()]
    Js = {s: j_interval(inst, s) for s in nontop}
    out.append(
        _check(
            "assoc(a, J(s)) iff R(a) <= s or R(a) <= swap(s)",
            itertools.product(range(len(atoms)), nontop),
            lambda p: (associated(inst, atoms[p[0]], Js[p[1]]) is not AssociationKind.NONE)
            == (R[p[0]] <= p[1] or R[p[0]] <= p[1].swap()),
        )
    )
    out.append(
        _check(
            "R(atom_for_signed_set(s)) in {s, swap(s)}",
            nontop,
            lambda s: r_map(inst, atom_for_signed_set(inst, s)) in (s, s.swap()),
        )
    )

    subsets = [J for r in range(1, k + 2) for J in itertools.combinations(X, r)]
    etas = {J: eta(inst, J) for J in subsets}
    out.append(
        _check(
            "eta recurrence = closed form",
            ((J, i) for J in subsets for i in range(len(J))),
            lambda p: etas[p[0]][p[1]] == eta_closed_form(inst, p[0], p[1]),
        )
    )
    out.append(
        _check(
            "atoms in [eta^J_i, 1] = 3^(k-i) 2^i",
            ((J, i) for J in subsets for i in range(len(J))),
            lambda p: atoms_in_upper_interval(B, etas[p[0]][p[1]]) == phi(k, p[1]),
        )
    )
    return out
