import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from riskmeasures import Position

ACCEPTANCE_LINES = []


def random_position(rng: random.Random, max_outcomes=6, lo=-1000, hi=1000, nonnegative=False) -> Position:
    k = rng.randint(1, max_outcomes)
    if nonnegative:
        lo = 0
    payoffs = [Fraction(rng.randint(lo * 4, hi * 4), 4) for _ in range(k)]
    weights = [rng.randint(1, 20) for _ in range(k)]
    total = sum(weights)
    return Position([(x, Fraction(w, total)) for x, w in zip(payoffs, weights)])


@st.composite
def positions(draw, max_outcomes=6, nonnegative=False):
    k = draw(st.integers(1, max_outcomes))
    lo = 0 if nonnegative else -10_000
    payoffs = draw(st.lists(st.integers(lo, 10_000), min_size=k, max_size=k))
    weights = draw(st.lists(st.integers(1, 50), min_size=k, max_size=k))
    total = sum(weights)
    return Position([(Fraction(x, 8), Fraction(w, total)) for x, w in zip(payoffs, weights)])


levels = st.sampled_from([Fraction(1, 2), Fraction(9, 10), Fraction(95, 100), Fraction(99, 100), Fraction(999, 1000)])


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""

    def record(number: int, passed: bool, text: str):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {text}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
