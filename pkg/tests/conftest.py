import numpy as np
import pytest

from sparse_moments import make_rng, random_model

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return make_rng(20240611)


def models(k, zeta, w_min, count, seed):
    """``count`` reproducible random models."""
    gen = make_rng(seed)
    return [random_model(k, zeta, w_min, gen) for _ in range(count)]


def kernel_vector(alpha):
    """Unit coefficient vector (increasing degree) of prod (z - alpha_i)."""
    q = np.poly(alpha)[::-1]
    return q / np.linalg.norm(q)


def angle(u, v):
    """Angle between the lines spanned by u and v."""
    u = np.asarray(u) / np.linalg.norm(u)
    v = np.asarray(v) / np.linalg.norm(v)
    if np.dot(u, v) < 0:
        v = -v
    # chord form keeps full precision for small angles
    return float(2 * np.arcsin(min(1.0, np.linalg.norm(u - v) / 2)))
