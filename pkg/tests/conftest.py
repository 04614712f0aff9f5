import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from pluripot.ratgeom import Body, random_body


def make_body(seed: int, n: int = 2, k: int = 5) -> Body:
    rng = random.Random(seed)
    return random_body(rng, n, k, denom=rng.randint(2, 7), scale=7)


def full_dim_body(seed: int, n: int = 2) -> Body:
    s = seed
    while True:
        S = make_body(s, n, k=n + 3)
        if S.is_full_dim():
            return S
        s += 10_007


seeds = st.integers(0, 10**6)
small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=7)


@pytest.fixture
def quad():
    from pluripot.bodies import quadrilateral_body
    return quadrilateral_body()


@pytest.fixture
def sigma2():
    return Body.simplex(2)


F = Fraction


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
