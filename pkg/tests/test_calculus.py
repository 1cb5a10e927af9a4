import dataclasses

import numpy as np
import pytest

from stehbein.calculus import (
    FrameGeometry,
    check_structure,
    check_theta_squared,
    differential0,
    differential1,
    dirac_form,
    geometry_invariants,
    maurer_cartan,
    theta_squared,
)
from stehbein.fixtures import random_geometry, su2_flip_geometry
from stehbein.frametensor import (
    FrameTensorField,
    antisymmetrizer_central,
    basis_field,
    flip_central,
    left_mul,
    max_coeff_norm,
    right_mul,
)
from stehbein.involution import star_form

from conftest import LAM, LAM1, LAM2, levi_civita3, random_matrix


def _zero_geometry():
    return FrameGeometry(N=2, n=3, lam=np.zeros((3, 2, 2)),
                         P=antisymmetrizer_central(3), S=flip_central(3))


# ---------------------------------------------------------------------------
# dirac form


def test_dirac_form_su2(su2_geom):
    th = dirac_form(su2_geom)
    assert np.allclose(th.coeffs, -LAM, atol=1e-15)


def test_dirac_form_is_antihermitian_as_a_form(su2_geom):
    # (theta^a)* = theta^a and lam_a antihermitian give theta* = -theta
    th = dirac_form(su2_geom)
    assert max_coeff_norm(star_form(th) + th) <= 1e-15


def test_dirac_form_zero_generators():
    assert max_coeff_norm(dirac_form(_zero_geometry())) == 0.0


# ---------------------------------------------------------------------------
# differential on degree 0


def test_differential0_of_identity(su2_geom):
    assert max_coeff_norm(differential0(np.eye(2), su2_geom)) == 0.0


def test_differential0_su2_generator(su2_geom):
    # d lam_3 has frame components ([lam_1,lam_3], [lam_2,lam_3], 0) = (-lam_2, lam_1, 0)
    d = differential0(LAM[2], su2_geom)
    assert np.allclose(d.coeffs[0], -LAM2, atol=1e-15)
    assert np.allclose(d.coeffs[1], LAM1, atol=1e-15)
    assert np.allclose(d.coeffs[2], 0, atol=1e-15)


def test_differential0_equals_minus_theta_commutator(su2_geom, rng):
    # df = -[theta, f] expanded on the frame
    th = dirac_form(su2_geom)
    for _ in range(5):
        f = random_matrix(rng)
        bracket = right_mul(th, f) - left_mul(f, th)
        assert max_coeff_norm(differential0(f, su2_geom) + bracket) <= 1e-12


def test_differential0_dimension_mismatch(su2_geom):
    with pytest.raises(ValueError):
        differential0(np.eye(3), su2_geom)


def test_differential0_leibniz(su2_geom, rng):
    # d(fg) = df g + f dg, expanded on the frame
    for _ in range(5):
        f, g = random_matrix(rng), random_matrix(rng)
        lhs = differential0(f @ g, su2_geom)
        rhs = right_mul(differential0(f, su2_geom), g) + left_mul(f, differential0(g, su2_geom))
        assert max_coeff_norm(lhs - rhs) <= 1e-12


# ---------------------------------------------------------------------------
# Maurer-Cartan coefficients


def test_maurer_cartan_su2_is_epsilon(su2_geom):
    # antisymmetric P kills the symmetrized generator term, leaving eps * identity
    c = maurer_cartan(su2_geom)
    expected = np.einsum('abc,ij->abcij', levi_civita3(), np.eye(2))
    assert np.max(np.abs(c - expected)) <= 1e-15


def test_maurer_cartan_zero_when_f_zero_and_antisymmetric_p(su2_geom):
    geom = dataclasses.replace(su2_geom, F=np.zeros((3, 3, 3)))
    assert np.max(np.abs(maurer_cartan(geom))) <= 1e-15


def test_maurer_cartan_p_reduced_on_random_geometry():
    geom = random_geometry(101)
    c = maurer_cartan(geom)
    reduced = np.einsum('abcij,bcde->adeij', c, geom.P)
    assert np.max(np.abs(reduced - c)) <= 1e-12


# ---------------------------------------------------------------------------
# differential on degree 1


def test_differential1_central_constant_with_zero_c(su2_geom):
    geom = dataclasses.replace(su2_geom, lam=np.zeros((3, 2, 2)), F=np.zeros((3, 3, 3)))
    xi = FrameTensorField(3, np.stack([np.eye(2), 2 * np.eye(2), 3j * np.eye(2)]))
    assert max_coeff_norm(differential1(xi, geom)) == 0.0


def test_differential1_su2_basis(su2_geom):
    # d theta^a = -1/2 eps_{abc} theta^b theta^c
    eps = levi_civita3()
    for a in range(3):
        d = differential1(basis_field(3, 2, (a,)), su2_geom)
        expected = np.einsum('bc,ij->bcij', -0.5 * eps[a], np.eye(2))
        assert np.max(np.abs(d.coeffs - expected)) <= 1e-15


def test_differential1_requires_degree_one(su2_geom):
    with pytest.raises(ValueError):
        differential1(basis_field(3, 2, (0, 1)), su2_geom)


def test_d_squared_vanishes_su2(su2_geom, rng):
    worst = 0.0
    for _ in range(100):
        f = random_matrix(rng)
        worst = max(worst, max_coeff_norm(differential1(differential0(f, su2_geom), su2_geom)))
    assert worst <= 1e-10


# ---------------------------------------------------------------------------
# structure condition


def test_structure_su2(su2_geom):
    assert check_structure(su2_geom) <= 1e-12


def test_structure_all_zero():
    assert check_structure(_zero_geometry()) == 0.0


def test_structure_perturbed_K(su2_geom):
    k = su2_geom.K.copy()
    k[0, 1] += 0.1
    geom = dataclasses.replace(su2_geom, K=k)
    # the perturbation enters linearly; residual is ||0.1 * I_2||_F = 0.1 sqrt(2)
    assert check_structure(geom) == pytest.approx(0.1 * np.sqrt(2), abs=1e-12)


# ---------------------------------------------------------------------------
# theta squared


def test_theta_squared_su2(su2_geom):
    assert check_theta_squared(su2_geom) <= 1e-12


def test_theta_squared_su2_value(su2_geom):
    # theta^2 = -d theta: coefficients +1/2 eps_{abc} lam_a... check against eps/2 pattern
    th2 = theta_squared(su2_geom)
    dth = differential1(dirac_form(su2_geom), su2_geom)
    assert max_coeff_norm(th2 + dth) <= 1e-15


def test_theta_squared_zero_geometry():
    assert check_theta_squared(_zero_geometry()) == 0.0


def test_theta_squared_violating_geometry_reports(su2_geom):
    # the perturbation must survive the wedge projection, so antisymmetric
    k = su2_geom.K.copy()
    k[0, 1] += 0.2
    k[1, 0] -= 0.2
    geom = dataclasses.replace(su2_geom, K=k)
    assert check_theta_squared(geom) == pytest.approx(0.1 * np.sqrt(2), abs=1e-12)


# ---------------------------------------------------------------------------
# geometry invariants


def test_invariants_su2(su2_geom):
    res = geometry_invariants(su2_geom)
    assert all(v <= 1e-12 for v in res.values()), res


def test_invariants_flag_bad_lambda(su2_geom):
    lam = su2_geom.lam.copy()
    lam[0] += 0.5 * np.eye(2)  # hermitian part
    res = geometry_invariants(dataclasses.replace(su2_geom, lam=lam))
    assert res["lambda_antihermitian"] > 0.5


def test_invariants_flag_non_projector(su2_geom):
    res = geometry_invariants(dataclasses.replace(su2_geom, P=0.7 * su2_geom.P))
    assert res["P_projector"] > 0.05


def test_geometry_shape_validation():
    with pytest.raises(ValueError):
        FrameGeometry(N=2, n=3, lam=np.zeros((2, 2, 2)),
                      P=antisymmetrizer_central(3), S=flip_central(3))
