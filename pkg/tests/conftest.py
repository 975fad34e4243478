import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from idealcycles.cyclefile import load_fixture
from idealcycles.exactnum import ProjPoint, QuadraticField

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

K = QuadraticField(-3)

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(K, small_fractions, small_fractions)
points = st.one_of(st.just(ProjPoint.infinity(K)), scalars.map(ProjPoint))
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def fig8():
    return load_fixture("figure_eight")


@pytest.fixture(scope="session")
def torus():
    return load_fixture("cusp_torus")


ACCEPTANCE_LINES: list[str] = []


def record_criterion(name: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
