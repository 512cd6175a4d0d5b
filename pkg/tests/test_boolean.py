import itertools

import pytest
from hypothesis import given, strategies as st

from cubal.boolean import (
    AlgebraMismatch,
    BoolAlg,
    Element,
    atoms_below,
    complement,
    element_from_literals,
    free_boolean,
    generated_subalgebra,
    join,
    leq,
    meet,
    quotient_by_ideal,
)
from cubal.free import generator_names, ideal_generators

from conftest import elements_of, instance

F1 = free_boolean(generator_names(1))
F2 = free_boolean(generator_names(2))


def test_free_boolean_two_names():
    B = free_boolean(["s0", "t0"])
    assert B.atom_count == 4
    assert len(B["s0"]) == 2


def test_free_boolean_k1_has_16_atoms():
    assert F1.atom_count == 16
    assert len(F1) == 2**16


def test_free_boolean_single_generator():
    B = free_boolean(["g"])
    assert B.atom_count == 2
    assert B["g"].atoms == {0}
    assert B.atom_labels == ((1,), (-1,))


def test_atom_order_is_lexicographic_plus_first():
    B = free_boolean(["a", "b", "c"])
    assert list(B.atom_labels) == list(itertools.product((1, -1), repeat=3))


@pytest.mark.parametrize("n", range(1, 9))
def test_generator_masks_match_labels(n):
    names = [f"g{i}" for i in range(n)]
    B = free_boolean(names)
    slow = BoolAlg(names, B.atom_labels)
    for g in names:
        assert B[g].bits == slow[g].bits
        for i, lab in enumerate(B.atom_labels):
            assert (B[g].bits >> i & 1) == (lab[names.index(g)] == 1)


def test_free_boolean_rejects_bad_names():
    with pytest.raises(ValueError):
        free_boolean([])
    with pytest.raises(ValueError):
        free_boolean(["a", "a"])
    with pytest.raises(ValueError):
        BoolAlg(["a", "a"], [(1, 1)])


def test_basic_identities():
    x = F1["s1"] | F1["t0"]
    assert meet(x, x) == x
    assert complement(F1.top) == F1.bottom
    st0 = meet(F1["s0"], F1["t0"])
    assert len(st0) == 4
    assert all(F1.atom_labels[i][0] == 1 and F1.atom_labels[i][2] == 1 for i in st0)
    assert join(F1.bottom, x) == x
    assert leq(st0, F1["s0"]) and not leq(F1["s0"], st0)


def test_mixed_parents_rejected():
    other = free_boolean(generator_names(1))
    with pytest.raises(AlgebraMismatch):
        F1["s0"] & other["s0"]
    with pytest.raises(AlgebraMismatch):
        F1["s0"] <= other["s0"]
    with pytest.raises(AlgebraMismatch):
        atoms_below(other, F1.top)


def test_element_range_checked():
    with pytest.raises(ValueError):
        Element(F1, 1 << 16)
    with pytest.raises(ValueError):
        F1.element([16])


@given(elements_of(F2), elements_of(F2), elements_of(F2))
def test_lattice_laws(a, b, c):
    assert ~(a & b) == ~a | ~b
    assert ~(a | b) == ~a & ~b
    assert a | (a & b) == a
    assert a & (a | b) == a
    assert a & (b | c) == (a & b) | (a & c)
    assert a | (b & c) == (a | b) & (a | c)
    assert (a <= b) == (a & b == a)


def test_quotient_empty_gens_is_identity():
    Q, p = quotient_by_ideal(F1, [])
    assert Q.atom_count == F1.atom_count
    assert Q.atom_labels == F1.atom_labels
    for name in F1.names:
        assert p(F1[name]).bits == F1[name].bits


def test_quotient_k1_keeps_four_atoms():
    Q, _ = quotient_by_ideal(F1, ideal_generators(1, F1))
    assert Q.atom_count == 4


def test_quotient_k0_is_two_element_algebra():
    F0 = free_boolean(generator_names(0))
    Q, p = quotient_by_ideal(F0, ideal_generators(0, F0))
    assert Q.atom_count == 1
    assert p(F0["s0"]) == Q.bottom and p(F0["t0"]) == Q.bottom


def test_quotient_survivors_by_brute_force():
    gens = ideal_generators(1, F1)
    killed = set().union(*(g.atoms for g in gens))
    Q, p = quotient_by_ideal(F1, gens)
    survivors = [F1.atom_labels[i] for i in range(16) if i not in killed]
    assert list(Q.atom_labels) == survivors
    for i, lab in enumerate(Q.atom_labels):
        for g, sign in zip(Q.names, lab):
            assert (Q.atom(i) <= Q[g]) == (sign == 1)


@given(elements_of(F2), elements_of(F2))
def test_projection_is_homomorphism(a, b):
    Q, p = quotient_by_ideal(F2, ideal_generators(2, F2))
    assert p(a & b) == p(a) & p(b)
    assert p(a | b) == p(a) | p(b)
    assert p(~a) == ~p(a)
    assert p(p.lift(p(a))) == p(a)


@pytest.mark.parametrize("k", range(8))
def test_quotient_atom_count_law(k):
    B = instance(k).B
    assert atoms_below(B, B.top) == (3 ** (k + 1) - 1) // 2


def test_atoms_below_examples():
    B2 = instance(2).B
    assert atoms_below(B2, B2.top) == 13
    assert atoms_below(B2, B2.bottom) == 0
    B1 = instance(1).B
    assert atoms_below(B1, ~B1["s1"] & B1["t1"]) == 1


def test_generated_subalgebra():
    assert generated_subalgebra(F1, []).atom_count == 1
    whole = generated_subalgebra(F1, [F1[g] for g in F1.names], F1.names)
    assert whole.atom_count == F1.atom_count
    sub = generated_subalgebra(F1, [F1["s0"]])
    assert len(sub) == 4
    assert {e.bits for e in sub.parent_atoms} == {F1["s0"].bits, (~F1["s0"]).bits}


def test_element_from_literals():
    e = element_from_literals(F1, [("t0", 1), ("s1", -1)])
    assert e == F1["t0"] & ~F1["s1"]
    assert element_from_literals(F1, []) == F1.top


def test_json_round_trip():
    B = instance(2).B
    again = BoolAlg.from_json(B.to_json())
    assert again.atom_labels == B.atom_labels
    assert all(again[g].bits == B[g].bits for g in B.names)
    assert B.dumps() == instance(2).B.dumps()


@given(st.sets(st.integers(0, 15)))
def test_element_iteration(atoms):
    e = F1.element(atoms)
    assert set(e) == atoms == e.atoms
    assert len(e) == len(atoms)
    assert e.is_atom() == (len(atoms) == 1)
