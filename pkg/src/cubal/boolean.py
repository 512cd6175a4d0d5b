"""Finite Boolean algebras stored as sets of atoms.

An element is a Python ``int`` used as a bit vector: bit ``i`` is set when
atom ``i`` lies below the element.  Python integers are unbounded, so the
same representation serves 4 atoms and 65536 atoms alike.

Atoms of a free algebra are sign vectors over the generator names,
enumerated lexicographically with ``+1`` before ``-1``.  Atom ``i`` therefore
has ``+1`` in position ``p`` exactly when bit ``n - 1 - p`` of ``i`` is clear.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "AlgebraMismatch",
    "BoolAlg",
    "Element",
    "Projection",
    "atoms_below",
    "complement",
    "free_boolean",
    "generated_subalgebra",
    "join",
    "leq",
    "meet",
    "quotient_by_ideal",
]

_uids = itertools.count()


class AlgebraMismatch(ValueError):
    """Raised when an operation mixes elements of different algebras."""


class Element:
    """A member of a finite Boolean algebra, i.e. a set of atoms."""

    __slots__ = ("alg", "bits")

    def __init__(self, alg: BoolAlg, bits: int) -> None:
        if bits < 0 or bits >> alg.atom_count:
            raise ValueError(f"atom set {bits:#x} out of range for {alg.atom_count} atoms")
        self.alg = alg
        self.bits = bits

    def _check(self, other: Element) -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.alg is not self.alg:
            raise AlgebraMismatch("elements belong to different algebras")

    def __and__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.alg, self.bits & other.bits)

    def __or__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.alg, self.bits | other.bits)

    def __invert__(self) -> Element:
        return Element(self.alg, self.alg.full ^ self.bits)

    def __sub__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.alg, self.bits & ~other.bits)

    def __le__(self, other: Element) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: Element) -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: Element) -> bool:
        return other <= self

    def __gt__(self, other: Element) -> bool:
        return other < self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.alg is other.alg and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.alg.uid, self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __repr__(self) -> str:
        return f"Element({sorted(self)})"

    @property
    def atoms(self) -> frozenset[int]:
        return frozenset(iter_bits(self.bits))

    def is_atom(self) -> bool:
        return self.bits != 0 and self.bits & (self.bits - 1) == 0


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class BoolAlg:
    """A finite Boolean algebra given by its atoms.

    ``atom_labels[i]`` is the sign vector of atom ``i`` over ``names``; the
    generator named ``g`` is the set of atoms whose label is ``+1`` at ``g``.
    Instances are immutable.
    """

    def __init__(
        self,
        names: Sequence[str],
        atom_labels: Sequence[Sequence[int]],
        parent_atoms: Sequence[Element] | None = None,
    ) -> None:
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names!r}")
        labels = tuple(tuple(int(e) for e in lab) for lab in atom_labels)
        for lab in labels:
            if len(lab) != len(names) or any(e not in (1, -1) for e in lab):
                raise ValueError(f"bad atom label {lab!r} for generators {names!r}")
        self.uid = next(_uids)
        self.names = names
        self.atom_labels = labels
        self.atom_count = len(labels)
        self.full = (1 << self.atom_count) - 1
        self.parent_atoms = tuple(parent_atoms) if parent_atoms is not None else None
        self._generators = {
            g: Element(self, sum(1 << i for i, lab in enumerate(labels) if lab[p] == 1))
            for p, g in enumerate(names)
        }

    @classmethod
    def _from_masks(
        cls, names: tuple[str, ...], labels: tuple[tuple[int, ...], ...], masks: dict[str, int]
    ) -> BoolAlg:
        # Skips the O(atoms * names) generator scan when masks are already known.
        self = cls.__new__(cls)
        self.uid = next(_uids)
        self.names = names
        self.atom_labels = labels
        self.atom_count = len(labels)
        self.full = (1 << self.atom_count) - 1
        self.parent_atoms = None
        self._generators = {g: Element(self, masks[g]) for g in names}
        return self

    def __repr__(self) -> str:
        return f"BoolAlg(generators={list(self.names)}, atoms={self.atom_count})"

    def __len__(self) -> int:
        return 1 << self.atom_count

    @property
    def generators(self) -> dict[str, Element]:
        return dict(self._generators)

    def __getitem__(self, name: str) -> Element:
        return self._generators[name]

    @property
    def top(self) -> Element:
        return Element(self, self.full)

    @property
    def bottom(self) -> Element:
        return Element(self, 0)

    def element(self, atoms: Iterable[int] = ()) -> Element:
        bits = 0
        for a in atoms:
            if not 0 <= a < self.atom_count:
                raise ValueError(f"atom index {a} out of range")
            bits |= 1 << a
        return Element(self, bits)

    def atom(self, i: int) -> Element:
        return self.element([i])

    def atoms(self) -> list[Element]:
        return [Element(self, 1 << i) for i in range(self.atom_count)]

    def elements(self) -> Iterator[Element]:
        """Iterate over all ``2**atom_count`` elements (small algebras only)."""
        for bits in range(1 << self.atom_count):
            yield Element(self, bits)

    def literal(self, name: str, sign: int = 1) -> Element:
        g = self._generators[name]
        return g if sign == 1 else ~g

    def meet_all(self, elems: Iterable[Element]) -> Element:
        out = self.top
        for e in elems:
            out = out & e
        return out

    def join_all(self, elems: Iterable[Element]) -> Element:
        out = self.bottom
        for e in elems:
            out = out | e
        return out

    def to_json(self) -> dict:
        return {"generators": list(self.names), "atom_labels": [list(lab) for lab in self.atom_labels]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> BoolAlg:
        return cls(data["generators"], data["atom_labels"])


def meet(a: Element, b: Element) -> Element:
    return a & b


def join(a: Element, b: Element) -> Element:
    return a | b


def complement(a: Element) -> Element:
    return ~a


def leq(a: Element, b: Element) -> bool:
    return a <= b


def _generator_mask(n: int, p: int) -> int:
    # Atoms with bit (n-1-p) clear: runs of `block` ones, period 2*block.
    block = 1 << (n - 1 - p)
    unit = (1 << block) - 1
    total = 1 << n
    return unit * (((1 << total) - 1) // ((1 << (2 * block)) - 1))


def free_boolean(names: Sequence[str]) -> BoolAlg:
    """The free Boolean algebra on ``names``, with ``2**len(names)`` atoms."""
    names = tuple(names)
    if not names:
        raise ValueError("free_boolean needs at least one generator")
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate generator names in {names!r}")
    n = len(names)
    labels = tuple(itertools.product((1, -1), repeat=n))
    masks = {g: _generator_mask(n, p) for p, g in enumerate(names)}
    return BoolAlg._from_masks(names, labels, masks)


def _gather(bits: int, keep: np.ndarray, width: int) -> int:
    """Compress ``bits`` onto the positions listed in ``keep``."""
    if bits == 0 or len(keep) == 0:
        return 0
    raw = np.frombuffer(bits.to_bytes((width + 7) // 8, "little"), dtype=np.uint8)
    flags = np.unpackbits(raw, bitorder="little")[keep]
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


class Projection:
    """The quotient map ``B -> B / (g*)`` where ``g*`` joins the ideal generators."""

    def __init__(self, source: BoolAlg, target: BoolAlg, kept: np.ndarray) -> None:
        self.source = source
        self.target = target
        self.kept = kept

    def __call__(self, e: Element) -> Element:
        if e.alg is not self.source:
            raise AlgebraMismatch("projection applied to an element of another algebra")
        return Element(self.target, _gather(e.bits, self.kept, self.source.atom_count))

    def lift(self, e: Element) -> Element:
        """The largest preimage of ``e`` that avoids the ideal."""
        if e.alg is not self.target:
            raise AlgebraMismatch("lift applied to an element of another algebra")
        return Element(self.source, sum(1 << int(self.kept[i]) for i in iter_bits(e.bits)))


def quotient_by_ideal(B: BoolAlg, gens: Sequence[Element]) -> tuple[BoolAlg, Projection]:
    """Quotient ``B`` by the ideal generated by ``gens``.

    In a finite algebra that ideal is principal, generated by the join of
    ``gens``; the quotient keeps exactly the atoms not below that join, in
    their original relative order.
    """
    killed = 0
    for g in gens:
        if g.alg is not B:
            raise AlgebraMismatch("ideal generator from a different algebra")
        killed |= g.bits
    survivors = (B.full ^ killed).to_bytes((B.atom_count + 7) // 8, "little")
    kept = np.flatnonzero(
        np.unpackbits(np.frombuffer(survivors, dtype=np.uint8), bitorder="little")[: B.atom_count]
    )
    labels = tuple(B.atom_labels[int(i)] for i in kept)
    masks = {g: _gather(B[g].bits, kept, B.atom_count) for g in B.names}
    Q = BoolAlg._from_masks(B.names, labels, masks)
    return Q, Projection(B, Q, kept)


def atoms_below(B: BoolAlg, e: Element) -> int:
    if e.alg is not B:
        raise AlgebraMismatch("element does not belong to this algebra")
    return len(e)


def generated_subalgebra(
    B: BoolAlg, elems: Sequence[Element], names: Sequence[str] | None = None
) -> BoolAlg:
    """The subalgebra of ``B`` generated by ``elems``.

    Its atoms are the non-empty cells of the partition of ``B``'s atoms by
    membership in each of ``elems``; ``parent_atoms`` records each cell as an
    element of ``B``.
    """
    elems = list(elems)
    for e in elems:
        if e.alg is not B:
            raise AlgebraMismatch("generator from a different algebra")
    if names is None:
        names = [f"e{i}" for i in range(len(elems))]
    cells: dict[tuple[int, ...], int] = {}
    for i in range(B.atom_count):
        pattern = tuple(1 if (e.bits >> i) & 1 else -1 for e in elems)
        cells[pattern] = cells.get(pattern, 0) | (1 << i)
    order = sorted(cells, key=lambda pat: cells[pat] & -cells[pat])
    return BoolAlg(names, order, [Element(B, cells[pat]) for pat in order])


def element_from_literals(B: BoolAlg, literals: Iterable[tuple[str, int]]) -> Element:
    """Meet of signed generators, e.g. ``[("t0", 1), ("s1", -1)]``."""
    return B.meet_all(B.literal(g, sign) for g, sign in literals)

