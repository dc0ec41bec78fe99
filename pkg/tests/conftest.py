import itertools

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from permgrid.perm import Permutation

settings.register_profile("default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def all_perms(n):
    return [Permutation(v) for v in itertools.permutations(range(1, n + 1))]


@st.composite
def perms(draw, min_size=1, max_size=9):
    n = draw(st.integers(min_size, max_size))
    return Permutation(draw(st.permutations(range(1, n + 1))))


@pytest.fixture(scope="session")
def small_perms():
    return {n: all_perms(n) for n in range(1, 8)}


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
