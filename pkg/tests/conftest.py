import numpy as np
import pytest
from hypothesis import assume, strategies as st

from guesswork import is_unambiguous, validate

MU = (0.05, 0.1, 0.85)
NU = (0.3, 0.2, 0.5)
NU2 = (0.32, 0.3, 0.37)


@pytest.fixture
def mu():
    return validate(MU)


@pytest.fixture
def nu():
    return validate(NU)


@pytest.fixture
def nu2():
    return validate(NU2)


def random_dist(rng, k, min_gap=1e-3):
    """Dirichlet draw, redrawn until clearly unambiguous and bounded away from zero."""
    while True:
        p = rng.dirichlet(np.ones(k))
        q = np.sort(p)
        if q[0] > 1e-3 and q[1] - q[0] > min_gap and q[-1] - q[-2] > min_gap:
            return validate(p)


def dists(k_min=3, k_max=5):
    """Hypothesis strategy for unambiguous distributions with entries bounded away from 0."""

    @st.composite
    def build(draw):
        k = draw(st.integers(k_min, k_max))
        w = draw(st.lists(st.floats(0.05, 1.0), min_size=k, max_size=k))
        p = validate(w)
        assume(is_unambiguous(p, gap=1e-4))
        return p

    return build()


def same_size_pair(k_min=3, k_max=5):
    @st.composite
    def build(draw):
        k = draw(st.integers(k_min, k_max))
        ws = [draw(st.lists(st.floats(0.05, 1.0), min_size=k, max_size=k)) for _ in range(2)]
        a, b = validate(ws[0]), validate(ws[1])
        assume(is_unambiguous(a, gap=1e-4) and is_unambiguous(b, gap=1e-4))
        return a, b

    return build()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
