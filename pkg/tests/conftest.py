import numpy as np
import pytest

from chiralosc.model import DoubletSpec, LevelSpec, ModelSpec, validate_model


def random_hermitian(rng, n=2, scale=1.0):
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (A + A.conj().T) / 2


def single_level_model():
    """m=0, delta=0.1, epsilon=0, one level at E=10 with g_L=0.5, g_R=0."""
    return validate_model(
        ModelSpec(
            doublet=DoubletSpec(m=0.0, delta=0.1, epsilon=0.0),
            levels=(LevelSpec(10.0, 0.5, 0.0),),
        )
    )


def rk4_amplitudes(H, psi0, t, dt):
    """Fixed-step RK4 integration of i dpsi/dt = H psi; independent of eigh."""
    H = np.asarray(H, dtype=complex)
    psi = np.asarray(psi0, dtype=complex).copy()
    n = int(round(t / dt))
    h = t / n
    f = lambda y: -1j * (H @ y)
    for _ in range(n):
        k1 = f(psi)
        k2 = f(psi + 0.5 * h * k1)
        k3 = f(psi + 0.5 * h * k2)
        k4 = f(psi + h * k3)
        psi = psi + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return psi


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
