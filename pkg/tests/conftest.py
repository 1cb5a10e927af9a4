import numpy as np
import pytest

from stehbein import (
    make_braiding,
    phase_twist_braiding,
    su2_braiding,
    su2_flip_geometry,
    su2_torsionfree_connection,
)

# lam_a = -(i/2) Pauli_a, written out so the tests do not depend on the fixtures
LAM1 = np.array([[0, -0.5j], [-0.5j, 0]])
LAM2 = np.array([[0, -0.5], [0.5, 0]], dtype=complex)
LAM3 = np.array([[-0.5j, 0], [0, 0.5j]])
LAM = np.array([LAM1, LAM2, LAM3])


def levi_civita3() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[a, b, c] = 1.0
        eps[a, c, b] = -1.0
    return eps


@pytest.fixture(scope="session")
def su2_geom():
    return su2_flip_geometry()


@pytest.fixture(scope="session")
def su2_braid():
    return su2_braiding()


@pytest.fixture(scope="session")
def su2_chi_conn():
    return su2_torsionfree_connection()


@pytest.fixture(scope="session")
def pt3():
    """Phase-twist braiding on 3 frame indices with one nontrivial phase."""
    return phase_twist_braiding(3, {(0, 1): np.exp(1j * np.pi / 5)})


@pytest.fixture(scope="session")
def pt3_full():
    """Phase twist with every off-diagonal phase nontrivial."""
    return phase_twist_braiding(
        3, {(0, 1): np.exp(1j * np.pi / 5), (0, 2): np.exp(0.7j), (1, 2): np.exp(-0.3j)})


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def random_matrix(rng, N=2):
    return rng.uniform(0, 1, (N, N)) + 1j * rng.uniform(0, 1, (N, N))
