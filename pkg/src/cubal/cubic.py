"""Interval algebras, signed-set algebras and finite cubic tables.

The interval algebra of a Boolean algebra ``B`` has the intervals ``[a, b]``
(``a <= b``) as carrier, ordered by containment, with

    [a, b] v [c, d]      = [a & c, b | d]
    Delta([a, b], [c, d]) = [a | (b & ~d), b & (a | ~c)]      for [c, d] <= [a, b]

``Delta`` is partial: it is only defined when its second argument lies below
the first.  :class:`CubicTable` holds an arbitrary finite algebra of the same
signature as explicit tables so the axiom checkers can be run on anything.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _raw
from .boolean import AlgebraMismatch, BoolAlg, Element

__all__ = [
    "AxiomResult",
    "CheckReport",
    "CubicTable",
    "Interval",
    "SignedSet",
    "TableFormatError",
    "caret",
    "check_cubic_axioms",
    "check_mr_axiom",
    "hasse_dot",
    "implication",
    "interval_delta",
    "interval_join",
    "interval_meet",
    "intervals",
    "localization",
    "localization_by_delta",
    "meet_table",
    "powerset_algebra",
    "preceq",
    "preceq_by_localization",
    "preceq_by_meet",
    "signed_algebra_iso",
    "signed_sets",
    "top_interval",
]


@dataclass(frozen=True)
class Interval:
    lo: Element
    hi: Element

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise ValueError(f"not an interval: {self.lo!r} is not below {self.hi!r}")

    @property
    def alg(self) -> BoolAlg:
        return self.lo.alg

    @property
    def key(self) -> tuple[int, int]:
        return self.lo.bits, self.hi.bits

    def __le__(self, other: Interval) -> bool:
        _same(self, other)
        return bool(_raw.leq(self.lo.bits, self.hi.bits, other.lo.bits, other.hi.bits))

    def __lt__(self, other: Interval) -> bool:
        return self <= other and self != other

    def __ge__(self, other: Interval) -> bool:
        return other <= self

    def __gt__(self, other: Interval) -> bool:
        return other < self

    def __or__(self, other: Interval) -> Interval:
        return interval_join(self, other)

    def is_vertex(self) -> bool:
        return self.lo == self.hi

    def __repr__(self) -> str:
        return f"[{sorted(self.lo)}, {sorted(self.hi)}]"

    @classmethod
    def from_bits(cls, alg: BoolAlg, lo: int, hi: int) -> Interval:
        return cls(Element(alg, int(lo)), Element(alg, int(hi)))


def _same(x: Interval, y: Interval) -> None:
    if x.lo.alg is not y.lo.alg:
        raise AlgebraMismatch("intervals belong to different algebras")


def top_interval(B: BoolAlg) -> Interval:
    return Interval(B.bottom, B.top)


def interval_join(x: Interval, y: Interval) -> Interval:
    _same(x, y)
    lo, hi = _raw.join(x.lo.bits, x.hi.bits, y.lo.bits, y.hi.bits)
    return Interval.from_bits(x.alg, lo, hi)


def interval_meet(x: Interval, y: Interval) -> Interval | None:
    """Greatest common subinterval, or ``None`` when the intervals are disjoint."""
    _same(x, y)
    lo, hi = x.lo.bits | y.lo.bits, x.hi.bits & y.hi.bits
    if lo & ~hi:
        return None
    return Interval.from_bits(x.alg, lo, hi)


def interval_delta(y: Interval, x: Interval) -> Interval:
    _same(x, y)
    if not x <= y:
        raise ValueError(f"Delta({y!r}, {x!r}) undefined: second argument not below the first")
    lo, hi = _raw.delta(y.lo.bits, y.hi.bits, x.lo.bits, x.hi.bits, y.alg.full)
    return Interval.from_bits(y.alg, lo, hi)


def implication(x, y, table: CubicTable | None = None):
    """``xy = Delta(1, Delta(x v y, y)) v y``.

    Works on intervals, or on element ids when ``table`` is given.
    """
    if table is not None:
        return table.implication(x, y)
    one = top_interval(x.alg)
    return interval_join(interval_delta(one, interval_delta(interval_join(x, y), y)), y)


def caret(a: Interval, w: Interval) -> Interval:
    """``a & Delta(a v w, w)``, evaluated in closed form for any two intervals."""
    _same(a, w)
    lo, hi = _raw.caret(a.lo.bits, a.hi.bits, w.lo.bits, w.hi.bits, a.alg.full)
    return Interval.from_bits(a.alg, lo, hi)


def preceq(a: Interval, b: Interval) -> bool:
    """``a <= Delta(a v b, b)``."""
    return a <= interval_delta(interval_join(a, b), b)


def preceq_by_meet(a: Interval, b: Interval) -> bool:
    """``b = (a v b) & (Delta(1, a) v b)``; false when the meet does not exist."""
    flipped = interval_delta(top_interval(a.alg), a)
    m = interval_meet(interval_join(a, b), interval_join(flipped, b))
    return m == b


def preceq_by_localization(a: Interval, b: Interval) -> bool:
    return b in localization_by_delta(a.alg, a)


def intervals(B: BoolAlg) -> Iterator[Interval]:
    """All ``3**atom_count`` intervals of ``B`` in ``(lo, hi)`` order."""
    full = B.full
    for lo in range(full + 1):
        rest = full ^ lo
        subs = []
        sub = rest
        while True:
            subs.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        for extra in reversed(subs):
            yield Interval.from_bits(B, lo, lo | extra)


def upper_set(a: Interval) -> list[Interval]:
    """Intervals containing ``a``, in ``(lo, hi)`` order."""
    B = a.alg
    out = []
    lo_subs = sorted(_submasks(a.lo.bits))
    hi_extra = sorted(_submasks(B.full ^ a.hi.bits))
    for lo in lo_subs:
        for extra in hi_extra:
            out.append(Interval.from_bits(B, lo, a.hi.bits | extra))
    return out


def _submasks(mask: int) -> list[int]:
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            return out
        sub = (sub - 1) & mask


def localization(B: BoolAlg, a: Interval) -> list[Interval]:
    """``{w in I(B) : a preceq w}``, sorted by ``(lo, hi)``."""
    if a.alg is not B:
        raise AlgebraMismatch("interval does not belong to this algebra")
    lo, hi = _raw.interval_space(B.atom_count)
    full = np.uint64(B.full)
    keep = _raw.preceq(np.uint64(a.lo.bits), np.uint64(a.hi.bits), lo, hi, full)
    return [Interval.from_bits(B, int(l), int(h)) for l, h in zip(lo[keep], hi[keep])]


def localization_by_delta(B: BoolAlg, a: Interval) -> set[Interval]:
    """``{Delta(y, x) : a <= x <= y}``, built straight from the definition."""
    up = upper_set(a)
    out = set()
    for y in up:
        for x in up:
            if x <= y:
                out.add(interval_delta(y, x))
    return out


# --- signed sets -----------------------------------------------------------


@dataclass(frozen=True, order=False)
class SignedSet:
    """A pair of disjoint index sets; the top element is ``<{}, {}>``."""

    A0: frozenset[int] = field(default_factory=frozenset)
    A1: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "A0", frozenset(self.A0))
        object.__setattr__(self, "A1", frozenset(self.A1))
        if self.A0 & self.A1:
            raise ValueError(f"signed set halves overlap on {sorted(self.A0 & self.A1)}")

    def __le__(self, other: SignedSet) -> bool:
        return other.A0 <= self.A0 and other.A1 <= self.A1

    def __lt__(self, other: SignedSet) -> bool:
        return self <= other and self != other

    def __or__(self, other: SignedSet) -> SignedSet:
        return SignedSet(self.A0 & other.A0, self.A1 & other.A1)

    def swap(self) -> SignedSet:
        return SignedSet(self.A1, self.A0)

    def delta(self, x: SignedSet) -> SignedSet:
        """``Delta(self, x)`` for ``x <= self``."""
        if not x <= self:
            raise ValueError(f"Delta({self}, {x}) undefined: second argument not below the first")
        A, B = self.A0, self.A1
        C, D = x.A0, x.A1
        return SignedSet(A | (D - B), B | (C - A))

    def is_top(self) -> bool:
        return not self.A0 and not self.A1

    @property
    def rank(self) -> int:
        return len(self.A0) + len(self.A1)

    def __repr__(self) -> str:
        return f"<{sorted(self.A0)}, {sorted(self.A1)}>"


def signed_sets(X: Iterable[int]) -> list[SignedSet]:
    X = sorted(X)
    out = []
    for signs in itertools.product((0, 1, 2), repeat=len(X)):
        out.append(
            SignedSet(
                frozenset(x for x, s in zip(X, signs) if s == 1),
                frozenset(x for x, s in zip(X, signs) if s == 2),
            )
        )
    return out


def powerset_algebra(X: Sequence[int]) -> BoolAlg:
    """``P(X)`` with one atom per member of ``X`` (in sorted order)."""
    X = sorted(X)
    labels = [[1 if i == j else -1 for j in range(len(X))] for i in range(len(X))]
    return BoolAlg([f"x{x}" for x in X], labels)


class SignedIso:
    """``<A, B> -> [A, X \\ B]`` from ``S(X)`` onto ``I(P(X))`` and back."""

    def __init__(self, X: Iterable[int]) -> None:
        self.X = tuple(sorted(X))
        self.algebra = powerset_algebra(self.X)
        self._pos = {x: i for i, x in enumerate(self.X)}

    def _bits(self, s: Iterable[int]) -> int:
        try:
            return sum(1 << self._pos[x] for x in s)
        except KeyError as exc:
            raise ValueError(f"index {exc.args[0]} not in {self.X}") from None

    def to_interval(self, s: SignedSet) -> Interval:
        B = self.algebra
        return Interval.from_bits(B, self._bits(s.A0), B.full ^ self._bits(s.A1))

    def to_signed(self, x: Interval) -> SignedSet:
        if x.alg is not self.algebra:
            raise AlgebraMismatch("interval is not over this power set")
        return SignedSet(
            frozenset(self.X[i] for i in x.lo),
            frozenset(self.X[i] for i in ~x.hi),
        )

    def __iter__(self):
        return iter((self.to_interval, self.to_signed))


def signed_algebra_iso(X: Iterable[int]) -> SignedIso:
    return SignedIso(X)


# --- explicit finite tables ------------------------------------------------


class TableFormatError(ValueError):
    """A cubic table file or structure is malformed."""


@dataclass
class CubicTable:
    """A finite algebra with a join table and a partial ``Delta`` table.

    ``delta[y, x]`` is ``-1`` where undefined.  ``labels`` are optional
    display names used by the DOT export.
    """

    one: int
    join: np.ndarray
    delta: np.ndarray
    labels: list[str] | None = None

    def __post_init__(self) -> None:
        self.join = np.asarray(self.join, dtype=np.int64)
        self.delta = np.asarray(self.delta, dtype=np.int64)
        n = self.join.shape[0]
        if self.join.shape != (n, n) or self.delta.shape != (n, n):
            raise TableFormatError("join and delta tables must be square and of equal size")
        if not 0 <= self.one < n:
            raise TableFormatError(f"one={self.one} outside carrier of size {n}")
        if ((self.join < 0) | (self.join >= n)).any():
            raise TableFormatError("join table entry outside the carrier")
        if ((self.delta < -1) | (self.delta >= n)).any():
            raise TableFormatError("delta table entry outside the carrier")

    @property
    def n(self) -> int:
        return self.join.shape[0]

    def leq_matrix(self) -> np.ndarray:
        """``M[x, y]`` iff ``x v y = y``."""
        return self.join == np.arange(self.n)[None, :]

    def implication(self, x: int, y: int) -> int:
        d = self.delta[self.join[x, y], y]
        if d < 0 or self.delta[self.one, d] < 0:
            raise ValueError(f"implication {x}->{y} needs an undefined Delta entry")
        return int(self.join[self.delta[self.one, d], y])

    @classmethod
    def from_intervals(cls, elems: Sequence[Interval]) -> CubicTable:
        """Tabulate a join- and Delta-closed set of intervals containing the top."""
        elems = sorted(elems, key=lambda w: w.key)
        if not elems:
            raise ValueError("empty carrier")
        B = elems[0].alg
        n = B.atom_count
        if n > 31:
            raise ValueError("table export supports at most 31 atoms")
        lo = np.array([w.lo.bits for w in elems], dtype=np.uint64)
        hi = np.array([w.hi.bits for w in elems], dtype=np.uint64)
        codes = _raw.pack(lo, hi, n)
        order = np.argsort(codes)
        sorted_codes = codes[order]

        def index_of(c: np.ndarray) -> np.ndarray:
            pos = np.searchsorted(sorted_codes, c)
            pos = np.minimum(pos, len(sorted_codes) - 1)
            found = sorted_codes[pos] == c
            if not found.all():
                raise ValueError("interval set is not closed under the cubic operations")
            return order[pos]

        J0, J1 = _raw.join(lo[:, None], hi[:, None], lo[None, :], hi[None, :])
        join = index_of(_raw.pack(J0, J1, n))
        comparable = _raw.leq(lo[None, :], hi[None, :], lo[:, None], hi[:, None])  # [y, x]: x <= y
        full = np.uint64(B.full)
        D0, D1 = _raw.delta(lo[:, None], hi[:, None], lo[None, :], hi[None, :], full)
        dcodes = _raw.pack(D0, D1, n)
        delta = np.full((len(elems), len(elems)), -1, dtype=np.int64)
        delta[comparable] = index_of(dcodes[comparable])
        top = top_interval(B)
        try:
            one = elems.index(top)
        except ValueError:
            raise ValueError("carrier does not contain the top interval") from None
        return cls(one, join, delta, labels=[repr(w) for w in elems])

    def to_json(self) -> dict:
        ys, xs = np.nonzero(self.delta >= 0)
        rows = sorted((int(y), int(x), int(self.delta[y, x])) for y, x in zip(ys, xs))
        return {
            "carrier": self.n,
            "one": int(self.one),
            "join": self.join.tolist(),
            "delta": [list(r) for r in rows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: object) -> CubicTable:
        if not isinstance(data, dict):
            raise TableFormatError("top level: expected an object")
        for key in ("carrier", "one", "join", "delta"):
            if key not in data:
                raise TableFormatError(f"top level: missing key {key!r}")
        n = data["carrier"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise TableFormatError(f"carrier: expected a positive integer, got {n!r}")
        one = data["one"]
        if not isinstance(one, int) or not 0 <= one < n:
            raise TableFormatError(f"one: expected an id in [0, {n}), got {one!r}")
        rows = data["join"]
        if not isinstance(rows, list) or len(rows) != n:
            raise TableFormatError(f"join: expected {n} rows")
        join = np.zeros((n, n), dtype=np.int64)
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise TableFormatError(f"join[{i}]: expected a row of {n} ids")
            for j, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < n:
                    raise TableFormatError(f"join[{i}][{j}]: bad id {v!r}")
                join[i, j] = v
        entries = data["delta"]
        if not isinstance(entries, list):
            raise TableFormatError("delta: expected a list of [y, x, d] rows")
        delta = np.full((n, n), -1, dtype=np.int64)
        for r, entry in enumerate(entries):
            if (
                not isinstance(entry, list)
                or len(entry) != 3
                or not all(isinstance(v, int) and 0 <= v < n for v in entry)
            ):
                raise TableFormatError(f"delta[{r}]: expected [y, x, d] with ids in [0, {n})")
            y, x, d = entry
            if delta[y, x] >= 0:
                raise TableFormatError(f"delta[{r}]: duplicate entry for ({y}, {x})")
            delta[y, x] = d
        return cls(one, join, delta)

    @classmethod
    def loads(cls, text: str) -> CubicTable:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TableFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_json(data)

    def to_dot(self, name: str = "hasse") -> str:
        leq = self.leq_matrix()
        lt = leq & ~np.eye(self.n, dtype=bool)
        lt_i = lt.astype(np.int64)
        between = (lt_i @ lt_i) > 0
        cover = lt & ~between
        labels = self.labels or [str(i) for i in range(self.n)]
        return hasse_dot(labels, list(zip(*np.nonzero(cover))), name)


def hasse_dot(labels: Sequence[str], covers: Iterable[tuple[int, int]], name: str = "hasse") -> str:
    """DOT text for a Hasse diagram; ``covers`` holds ``(lower, upper)`` pairs."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for i, lab in enumerate(labels):
        lines.append(f'  n{i} [label="{lab}"];')
    for lo, up in sorted((int(a), int(b)) for a, b in covers):
        lines.append(f"  n{lo} -> n{up};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- axiom checkers --------------------------------------------------------


@dataclass
class AxiomResult:
    name: str
    passed: bool
    checked: int
    witness: tuple[int, ...] | None = None
    kind: str = "axiom"  # "axiom" or "structure"

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        extra = f" witness={self.witness}" if self.witness is not None else ""
        return f"{self.name}: {status} ({self.checked} cases){extra}"


@dataclass
class CheckReport:
    results: list[AxiomResult]
    exhaustive: bool = True
    coverage: str = "exhaustive"

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "coverage": self.coverage,
            "results": [
                {
                    "name": r.name,
                    "kind": r.kind,
                    "passed": r.passed,
                    "checked": r.checked,
                    "witness": list(r.witness) if r.witness is not None else None,
                }
                for r in self.results
            ],
        }

    def text(self) -> str:
        return "\n".join([f"coverage: {self.coverage}"] + [r.line() for r in self.results])


def _result(name: str, tuples: np.ndarray, ok: np.ndarray, kind: str = "axiom") -> AxiomResult:
    bad = tuples[~ok]
    witness = None
    if len(bad):
        keys = tuple(bad[:, c] for c in reversed(range(bad.shape[1])))
        witness = tuple(int(v) for v in bad[np.lexsort(keys)[0]])
    return AxiomResult(name, len(bad) == 0, len(tuples), witness, kind)


class _Tuples:
    """Source of argument tuples: all of them, or a seeded sample."""

    def __init__(self, n: int, leq: np.ndarray, exhaustive: bool, samples: int, seed: int) -> None:
        self.n = n
        self.leq = leq
        self.exhaustive = exhaustive
        self.samples = samples
        self.rng = np.random.default_rng(seed)

    def all(self, arity: int) -> np.ndarray:
        if self.exhaustive:
            grids = np.indices((self.n,) * arity).reshape(arity, -1).T
            return grids
        return self.rng.integers(0, self.n, size=(self.samples, arity))

    def pairs_below(self) -> np.ndarray:
        """``(x, y)`` with ``x <= y``."""
        xs, ys = np.nonzero(self.leq)
        pairs = np.stack([xs, ys], axis=1)
        if self.exhaustive or len(pairs) <= self.samples:
            return pairs
        return pairs[self.rng.choice(len(pairs), self.samples, replace=False)]

    def chains(self) -> np.ndarray:
        """``(x, y, z)`` with ``x <= y <= z``."""
        xs, ys = np.nonzero(self.leq)
        if self.exhaustive:
            out = []
            for x, y in zip(xs, ys):
                zs = np.nonzero(self.leq[y])[0]
                out.append(np.stack([np.full(len(zs), x), np.full(len(zs), y), zs], axis=1))
            chains = np.concatenate(out) if out else np.zeros((0, 3), dtype=np.int64)
            keys = (chains[:, 2], chains[:, 1], chains[:, 0])
            return chains[np.lexsort(keys)]
        pick = self.rng.integers(0, len(xs), size=self.samples)
        out = np.zeros((self.samples, 3), dtype=np.int64)
        for r, p in enumerate(pick):
            zs = np.nonzero(self.leq[ys[p]])[0]
            out[r] = (xs[p], ys[p], zs[self.rng.integers(0, len(zs))])
        return out


def _padded(T: CubicTable) -> tuple[np.ndarray, np.ndarray, int]:
    """Join and Delta tables extended with a sentinel id ``n`` for "undefined"."""
    n = T.n
    J = np.full((n + 1, n + 1), n, dtype=np.int64)
    J[:n, :n] = T.join
    D = np.full((n + 1, n + 1), n, dtype=np.int64)
    D[:n, :n] = np.where(T.delta >= 0, T.delta, n)
    return J, D, n


def check_cubic_axioms(
    T: CubicTable, *, exhaustive_limit: int = 100, samples: int = 20000, seed: int = 0
) -> CheckReport:
    """Check the semilattice structure and cubic axioms (a)-(f) on ``T``.

    Tuples are exhausted when ``T.n <= exhaustive_limit``; otherwise ``samples``
    random tuples per axiom are drawn.  Each failure carries the
    lexicographically least failing tuple among those checked.
    """
    n = T.n
    leq = T.leq_matrix()
    exhaustive = n <= exhaustive_limit
    src = _Tuples(n, leq, exhaustive, samples, seed)
    results: list[AxiomResult] = []
    J, D, U = _padded(T)
    one = T.one

    t1 = np.arange(n)[:, None]
    results.append(_result("idempotent", t1, T.join[t1[:, 0], t1[:, 0]] == t1[:, 0], "structure"))
    t2 = src.all(2)
    x, y = t2[:, 0], t2[:, 1]
    results.append(_result("commutative", t2, T.join[x, y] == T.join[y, x], "structure"))
    results.append(_result("one absorbs", t1, T.join[t1[:, 0], one] == one, "structure"))
    t3 = src.all(3)
    x, y, z = t3[:, 0], t3[:, 1], t3[:, 2]
    results.append(
        _result("associative", t3, T.join[T.join[x, y], z] == T.join[x, T.join[y, z]], "structure")
    )
    t2 = src.all(2)
    x, y = t2[:, 0], t2[:, 1]
    defined = T.delta[y, x] >= 0
    results.append(_result("delta domain", t2, defined == leq[x, y], "structure"))

    pairs = src.pairs_below()
    x, y = pairs[:, 0], pairs[:, 1]
    d = D[y, x]
    results.append(_result("(a)", pairs, (d != U) & (J[d, x] == y)))
    dd = D[y, d]
    results.append(_result("(c)", pairs, (d != U) & (dd == x)))

    chains = src.chains()
    x, y, z = chains[:, 0], chains[:, 1], chains[:, 2]
    dyx, dzy, dzx = D[y, x], D[z, y], D[z, x]
    lhs = D[z, dyx]
    rhs = D[dzy, dzx]
    results.append(_result("(b)", chains, (lhs != U) & (rhs != U) & (lhs == rhs)))
    ok_d = (dzx != U) & (dzy != U) & (J[dzx, dzy] == dzy)
    results.append(_result("(d)", chains, ok_d))

    def imp(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return J[D[one, D[J[a, b], b]], b]

    t2 = src.all(2)
    x, y = t2[:, 0], t2[:, 1]
    xy = imp(x, y)
    lhs = imp(xy, y)
    results.append(_result("(e)", t2, (lhs != U) & (lhs == J[x, y])))
    t3 = src.all(3)
    x, y, z = t3[:, 0], t3[:, 1], t3[:, 2]
    lhs = imp(x, imp(y, z))
    rhs = imp(y, imp(x, z))
    results.append(_result("(f)", t3, (lhs != U) & (lhs == rhs)))

    coverage = "exhaustive" if exhaustive else f"sampled {samples} tuples per axiom (seed {seed})"
    return CheckReport(results, exhaustive, coverage)


def meet_table(T: CubicTable) -> np.ndarray:
    """Greatest lower bounds in the join-induced order; ``-1`` where none exists."""
    leq = T.leq_matrix()  # leq[c, a]: c <= a
    below = leq.T.astype(np.int64)  # below[a, c]: c <= a
    n = T.n
    out = np.full((n, n), -1, dtype=np.int64)
    for a in range(n):
        common = below[a][None, :] * below  # common[b, c]: c below a and b
        counts = common.sum(axis=1)
        inside = common @ leq.astype(np.int64)  # inside[b, m]: common bounds <= m
        is_glb = (common == 1) & (inside == counts[:, None])
        bs, ms = np.nonzero(is_glb)
        out[a, bs] = ms
    return out


def check_mr_axiom(
    T: CubicTable, *, exhaustive_limit: int = 100, samples: int = 20000, seed: int = 0
) -> CheckReport:
    """For ``a, b < x``: ``Delta(x, a) v b < x`` iff ``a & b`` does not exist.

    Witnesses are ``(x, a, b)`` triples.
    """
    n = T.n
    leq = T.leq_matrix()
    lt = leq & ~np.eye(n, dtype=bool)
    meets = meet_table(T)
    J, D, U = _padded(T)
    exhaustive = n <= exhaustive_limit
    if exhaustive:
        triples = [
            (x, a, b)
            for x in range(n)
            for a in np.nonzero(lt[:, x])[0]
            for b in np.nonzero(lt[:, x])[0]
        ]
        t = np.array(triples, dtype=np.int64).reshape(-1, 3)
    else:
        rng = np.random.default_rng(seed)
        rows = []
        xs = np.nonzero(lt.any(axis=0))[0]
        for _ in range(samples):
            x = xs[rng.integers(0, len(xs))]
            below = np.nonzero(lt[:, x])[0]
            rows.append((x, below[rng.integers(0, len(below))], below[rng.integers(0, len(below))]))
        t = np.array(rows, dtype=np.int64).reshape(-1, 3)
    x, a, b = t[:, 0], t[:, 1], t[:, 2]
    v = J[D[x, a], b]
    lhs = (v != x) & (J[v, x] == x)
    rhs = meets[a, b] < 0
    coverage = "exhaustive" if exhaustive else f"sampled {samples} triples (seed {seed})"
    return CheckReport([_result("MR", t, lhs == rhs)], exhaustive, coverage)
