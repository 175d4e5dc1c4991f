import numpy as np
import pytest

from bath_entanglement.settings import SETTINGS_ENV, reload_settings
from bath_entanglement.states import CouplingSpectrum, PureState, product_state

RHO0 = np.array([
    [1, 1, -1, -1],
    [1, 1, -1, -1],
    [-1, -1, 1, 1],
    [-1, -1, 1, 1],
]) / 4.0

RHO_INF = np.array([
    [1, 0, 0, 0],
    [0, 1, -1, 0],
    [0, -1, 1, 0],
    [0, 0, 0, 1],
]) / 4.0


@pytest.fixture(autouse=True)
def default_settings(monkeypatch):
    monkeypatch.delenv(SETTINGS_ENV, raising=False)
    yield reload_settings()
    reload_settings()


@pytest.fixture
def rho0():
    """``|-> (x) |+>``, the two-qubit starting point."""
    return product_state(PureState.minus(), PureState.plus())


@pytest.fixture
def qutrit_rho0():
    return product_state(PureState.minus(), PureState.uniform(3))


@pytest.fixture
def symmetric():
    return CouplingSpectrum((0.0, 1.0), (0.0, 1.0))


@pytest.fixture
def nondegenerate():
    return CouplingSpectrum((0.0, 1.0), (0.0, 1.3))


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


def oracle_pt_spectrum(matrix, dims):
    """Brute-force partial transpose by index loops plus numpy eigvalsh."""
    matrix = np.asarray(matrix)
    pt = np.empty_like(matrix)
    for i in range(dims.dA):
        for j in range(dims.dA):
            for k in range(dims.dB):
                for l in range(dims.dB):
                    pt[i * dims.dB + k, j * dims.dB + l] = \
                        matrix[j * dims.dB + k, i * dims.dB + l]
    return np.linalg.eigvalsh(pt)


@pytest.fixture
def oracle():
    return oracle_pt_spectrum


def random_density_matrix(rng, dim, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_state(rng, dim):
    return PureState.from_amplitudes(
        rng.normal(size=dim) + 1j * rng.normal(size=dim), normalize=True)

