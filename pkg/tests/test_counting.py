import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from cubal.boolean import atoms_below
from cubal.counting import (
    alpha_distinct_meet,
    alpha_star,
    alpha_total,
    atoms_in_upper_interval,
    embedding_upper_bound,
    eta,
    eta_closed_form,
    free_algebra_size,
    localization_size,
    phi,
    size_table,
)
from cubal.cubic import Interval, intervals, localization, top_interval
from cubal.free import lx_codes
from cubal.generation import covers_above

from conftest import instance, intervals_of, power


@pytest.mark.parametrize("k, n", [(0, 1), (1, 4), (2, 13), (3, 40), (4, 121), (5, 364), (6, 1093), (7, 3280)])
def test_alpha_total(k, n):
    assert alpha_total(k) == n == instance(k).B.atom_count


def test_alpha_total_recurrence():
    for k in range(1, 30):
        assert alpha_total(k) == 3 * alpha_total(k - 1) + 1
    with pytest.raises(ValueError):
        alpha_total(-1)


@pytest.mark.parametrize("k", range(5))
def test_alpha_distinct_meet_matches_atom_filter(k):
    inst = instance(k)
    B = inst.B
    for n in range(k + 1):
        for J in itertools.combinations(range(1, k + 1), n):
            e = B.meet_all(~inst.s(j) & inst.t(j) for j in J)
            assert atoms_below(B, e) == alpha_distinct_meet(k, n)
    assert alpha_distinct_meet(k, k + 1) == 0


def test_alpha_distinct_meet_examples():
    assert alpha_distinct_meet(1, 1) == 1
    assert alpha_distinct_meet(3, 2) == 4
    with pytest.raises(ValueError):
        alpha_distinct_meet(1, 3)


def test_atoms_in_upper_interval_examples(b1):
    B = b1.B
    assert atoms_in_upper_interval(B, top_interval(B)) == 0
    for p in range(16):
        assert atoms_in_upper_interval(B, Interval.from_bits(B, p, p)) == 4
    assert atoms_in_upper_interval(B, b1.gens[0]) == 3
    assert alpha_star(B, b1.gens[0]) == 1


@given(intervals_of(power(4)))
def test_atoms_in_upper_interval_counts_covers(x):
    # the atoms of [x, 1] are the intervals covering x
    assert atoms_in_upper_interval(x.alg, x) == len(covers_above(x))


def test_covers_above_are_covers():
    B = power(3)
    elems = list(intervals(B))
    for x in elems:
        above = [w for w in elems if x < w]
        minimal = {w for w in above if not any(x < v < w for v in above)}
        assert set(covers_above(x)) == minimal


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_localization_size_matches_enumeration(n):
    B = power(n)
    for x in intervals(B):
        assert localization_size(B, x) == len(localization(B, x))


def test_localization_size_examples(b1, b2):
    assert localization_size(b1.B, top_interval(b1.B)) == 1
    assert localization_size(b1.B, b1.gens[0]) == 27
    for I in b2.gens:
        assert localization_size(b2.B, I) == 3**9 == 19683


def test_eta_examples(b1):
    B = b1.B
    assert eta(b1, [1]) == [b1.gens[1]]
    seq = eta(b1, [0, 1])
    assert seq[1] == Interval(B.bottom, b1.t(0) | (~b1.s(1) & b1.t(1)))
    assert seq[1] == eta_closed_form(b1, [0, 1], 1)
    both = set(localization(B, b1.gens[0])) & set(localization(B, b1.gens[1]))
    assert both == set(localization(B, seq[1]))
    with pytest.raises(ValueError):
        eta(b1, [])
    with pytest.raises(ValueError):
        eta(b1, [0, 2])


@pytest.mark.parametrize("k", range(4))
def test_eta_closed_form_and_phi(k):
    inst = instance(k)
    for r in range(1, k + 2):
        for J in itertools.combinations(range(k + 1), r):
            seq = eta(inst, J)
            for i, e in enumerate(seq):
                assert e == eta_closed_form(inst, J, i)
                assert atoms_in_upper_interval(inst.B, e) == phi(k, i)


def test_phi():
    assert [phi(2, l) for l in range(3)] == [9, 6, 4]
    assert all(phi(k, 0) == 3**k for k in range(10))
    with pytest.raises(ValueError):
        phi(2, 3)
    with pytest.raises(ValueError):
        phi(-1, 0)


def test_free_algebra_size_examples():
    assert free_algebra_size(1) == 3
    assert free_algebra_size(2) == 2 * 27 - 9 == 45
    assert free_algebra_size(3) == 3 * 3**9 - 3 * 3**6 + 3**4 == 56943
    with pytest.raises(ValueError):
        free_algebra_size(0)


@pytest.mark.parametrize("k", range(3))
def test_free_algebra_size_matches_enumeration(k):
    assert free_algebra_size(k + 1) == len(lx_codes(instance(k)))


def test_upper_bound():
    assert embedding_upper_bound(1) == 81
    assert embedding_upper_bound(2) == 3**16
    for m in range(1, 9):
        assert free_algebra_size(m) <= embedding_upper_bound(m)
    with pytest.raises(ValueError):
        embedding_upper_bound(0)


@pytest.mark.parametrize("k", range(7))
def test_inclusion_exclusion_inner_identity(k):
    for i in range(k + 1):
        lhs = sum(comb(i + 1, j) * (-1) ** j * (3 ** (k + 1 - j) - 1) for j in range(i + 2))
        assert lhs == 3 ** (k - i) * 2 ** (i + 1)


@given(st.integers(1, 8))
def test_size_is_exact_integer(m):
    size = free_algebra_size(m)
    assert isinstance(size, int) and size > 0
    # the leading term dominates
    k = m - 1
    assert size <= m * 3 ** phi(k, 0)


def test_size_table():
    rows = size_table(3)
    assert [r["m"] for r in rows] == [1, 2, 3]
    assert [r["atoms"] for r in rows] == [1, 4, 13]
    assert [r["size"] for r in rows] == [3, 45, 56943]
    assert rows[0]["upper_bound"] == 81
