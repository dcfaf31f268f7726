import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from ewlgame import qlinalg  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@st.composite
def su2_elements(draw):
    """SU(2) elements from four bounded reals, rejecting near-zero vectors."""
    v = np.array([draw(st.floats(-1, 1, allow_nan=False)) for _ in range(4)])
    n = np.linalg.norm(v)
    if n < 1e-3:
        v, n = np.array([1.0, 0, 0, 0]), 1.0
    v = v / n
    return qlinalg.SU2Element(complex(v[0], v[1]), complex(v[2], v[3]))


def complex_vectors(n):
    return st.lists(
        st.tuples(st.floats(-10, 10, allow_nan=False), st.floats(-10, 10, allow_nan=False)),
        min_size=n,
        max_size=n,
    ).map(lambda pairs: np.array([complex(a, b) for a, b in pairs]))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record ``(criterion, passed, detail)`` and assert on it."""

    def record(criterion: str, passed: bool, detail: str) -> None:
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert passed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
