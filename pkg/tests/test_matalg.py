import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stehbein.matalg import (
    adjoint,
    antihermiticity_residual,
    centrality_residual,
    commutator,
    frobenius_norm,
)

from conftest import LAM, LAM1, LAM2, LAM3


def _rand(seed, N=2):
    rng = np.random.default_rng(seed)
    return rng.uniform(0, 1, (N, N)) + 1j * rng.uniform(0, 1, (N, N))


def test_adjoint_identity():
    assert np.array_equal(adjoint(np.eye(2)), np.eye(2))


def test_adjoint_shift_matrix():
    a = np.array([[0, 1], [0, 0]], dtype=complex)
    assert np.array_equal(adjoint(a), np.array([[0, 0], [1, 0]]))


def test_adjoint_su2_generators_antihermitian():
    for lam in LAM:
        assert np.allclose(adjoint(lam), -lam, atol=1e-15)
        assert antihermiticity_residual(lam) < 1e-15


def test_adjoint_involutive_exactly():
    a = _rand(0)
    assert np.array_equal(adjoint(adjoint(a)), a)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 5))
def test_adjoint_antihomomorphism(seed, N):
    a, b = _rand(seed, N), _rand(seed + 1, N)
    assert frobenius_norm(adjoint(a @ b) - adjoint(b) @ adjoint(a)) <= 1e-12


def test_commutator_with_self_is_zero():
    a = _rand(1)
    assert frobenius_norm(commutator(a, a)) == 0.0


def test_commutator_su2_cyclic():
    assert np.allclose(commutator(LAM1, LAM2), LAM3, atol=1e-15)
    assert np.allclose(commutator(LAM2, LAM3), LAM1, atol=1e-15)
    assert np.allclose(commutator(LAM3, LAM1), LAM2, atol=1e-15)


def test_commutator_identity_is_central():
    b = _rand(2)
    assert frobenius_norm(commutator(np.eye(2), b)) == 0.0


def test_commutator_dimension_mismatch():
    with pytest.raises(ValueError):
        commutator(np.eye(2), np.eye(3))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 4))
def test_commutator_antisymmetry_and_jacobi(seed, N):
    a, b, c = _rand(seed, N), _rand(seed + 1, N), _rand(seed + 2, N)
    assert frobenius_norm(commutator(a, b) + commutator(b, a)) <= 1e-12
    jac = (commutator(a, commutator(b, c))
           + commutator(b, commutator(c, a))
           + commutator(c, commutator(a, b)))
    assert frobenius_norm(jac) <= 1e-12


def test_centrality_scalar_multiple_of_identity():
    assert centrality_residual(3.0 * np.eye(2), LAM) == 0.0


def test_centrality_zero_element():
    assert centrality_residual(np.zeros((2, 2)), LAM) == 0.0


def test_centrality_of_su2_generator():
    # max_a ||[lam_a, lam_3]||_F = ||lam_2||_F = sqrt(1/2), by 2x2 arithmetic
    assert centrality_residual(LAM3, LAM) == pytest.approx(0.7071067811865476, abs=1e-15)


def test_centrality_accepts_geometry_duck_type(su2_geom):
    assert centrality_residual(np.eye(2), su2_geom) == 0.0


def test_centrality_dimension_mismatch():
    with pytest.raises(ValueError):
        centrality_residual(np.eye(3), LAM)
