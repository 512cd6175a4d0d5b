from functools import lru_cache

import pytest
from hypothesis import strategies as st

from cubal.boolean import BoolAlg, Element
from cubal.cubic import Interval, powerset_algebra
from cubal.free import build


@lru_cache(maxsize=None)
def instance(k: int):
    return build(k)


@lru_cache(maxsize=None)
def power(n: int) -> BoolAlg:
    return powerset_algebra(list(range(n)))


@pytest.fixture(scope="session")
def b1():
    return instance(1)


@pytest.fixture(scope="session")
def b2():
    return instance(2)


def elements_of(B: BoolAlg):
    return st.integers(0, B.full).map(lambda bits: Element(B, bits))


def intervals_of(B: BoolAlg):
    def make(pair):
        a, b = pair
        return Interval.from_bits(B, a & b, b)

    return st.tuples(st.integers(0, B.full), st.integers(0, B.full)).map(make)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
