import os
import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from lieideal import corpus  # noqa: E402
from lieideal.multilin import Cochain  # noqa: E402

SMALL = [Fraction(a, b) for a in range(-3, 4) for b in (1, 2, 3)]


def rationals(lo=-3, hi=3):
    return st.builds(Fraction, st.integers(lo, hi), st.sampled_from([1, 2, 3]))


def rand_q(rng: random.Random, zero_bias=0.0) -> Fraction:
    if zero_bias and rng.random() < zero_bias:
        return Fraction(0)
    return rng.choice(SMALL)


def rand_cochain(rng, space, zero_bias=0.0) -> Cochain:
    return Cochain(space, tuple(rand_q(rng, zero_bias) for _ in range(space.dim)))


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture(scope="session")
def pairs():
    return corpus.all_pairs()


@pytest.fixture(scope="session")
def heis():
    return corpus.load("heisenberg3").ideal_data("center")


@pytest.fixture(scope="session")
def ss():
    return corpus.load("sl2xsl2").ideal_data("factor1")


# acceptance lines, printed once more at the end of the run so they survive output capture
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
