import numpy as np
import pytest

from centropy import states
from centropy.mc import hs_matrices
from centropy.rng import make_rng

_ACCEPTANCE_LINES = []


def record(criterion: str, passed: bool, detail: str) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}"
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return make_rng(1234, 0)


def random_hermitian(rng, n, dim=4):
    g = rng.standard_normal((n, dim, dim)) + 1j * rng.standard_normal((n, dim, dim))
    return (g + np.swapaxes(g.conj(), -1, -2)) / 2


def random_states(rng, n):
    return [states.from_matrix(m) for m in hs_matrices(rng, n)]


def random_pure(rng):
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return states.pure_state(v)
