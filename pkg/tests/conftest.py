import math

import numpy as np
import pytest
from hypothesis import strategies as st

from dqd_discord.dynamics import x_state


def random_density_matrix(rng, rank=None):
    rank = rank or rng.integers(1, 5)
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_x_state(rng):
    a, b2, c = rng.dirichlet([1.0, 1.0, 1.0])
    b = b2 / 2
    x = rng.uniform(0, b) * np.exp(2j * np.pi * rng.uniform())
    y = rng.uniform(0, math.sqrt(a * c)) * np.exp(2j * np.pi * rng.uniform())
    return (a, b, c, x, y), x_state(a, b, c, x, y)


def random_local_unitary(rng):
    def su2():
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        return np.array([[q[0] + 1j * q[3], q[2] + 1j * q[1]],
                         [-q[2] + 1j * q[1], q[0] - 1j * q[3]]])
    return np.kron(su2(), su2())


def product_state(rng):
    def qubit():
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        r = g @ g.conj().T
        return r / np.trace(r).real
    return np.kron(qubit(), qubit())


def classical_classical(rng):
    p = rng.dirichlet(np.ones(4))
    return np.diag(p).astype(complex)


BELL = np.zeros((4, 4), dtype=complex)
BELL[np.ix_([0, 3], [0, 3])] = 0.5


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, title: str, checks: dict[str, bool], detail: str = "") -> bool:
    """Store and print one PASS/FAIL line; returns whether every sub-check held."""
    ok = all(checks.values())
    failed = [name for name, good in checks.items() if not good]
    line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}"
    if failed:
        line += f" -- failing: {', '.join(failed)}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
