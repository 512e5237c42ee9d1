import numpy as np
import pytest

from apo.poly import min_separation

# filled by test_acceptance; printed once at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_unimodular_system(rng, n, m, min_sep=0.3):
    """Conjugation-closed unit-circle nodes with real weights, ``m`` of them."""
    while True:
        half = m // 2
        ang = rng.uniform(0.2, np.pi - 0.2, half)
        z = np.concatenate([np.exp(1j * ang), np.exp(-1j * ang)])
        if m % 2:
            z = np.append(z, rng.choice([1.0, -1.0]))
        if min_separation(z) >= min_sep:
            break
    w = rng.uniform(0.5, 2.0, half) * rng.choice([-1.0, 1.0], half)
    weights = np.concatenate([w, w])
    if m % 2:
        weights = np.append(weights, rng.uniform(0.5, 2.0))
    return z.astype(complex), weights


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
