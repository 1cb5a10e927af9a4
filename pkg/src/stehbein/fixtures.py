"""Built-in geometries and braidings with known properties, plus seeded generators.

Conventions pinned here so that every derived number in the test suite is
reproducible:

* Pauli_1 = [[0,1],[1,0]], Pauli_2 = [[0,-i],[i,0]], Pauli_3 = [[1,0],[0,-1]];
  lam_a = -(i/2) Pauli_a, so [lam_1, lam_2] = lam_3 cyclically.
* Random complex entries are uniform over the unit square (re, im in [0, 1)).
* Random projectors come from a hermitian matrix whose eigenvalues are
  rounded to {0, 1} at their midpoint, giving machine-exact idempotence.
"""

from __future__ import annotations

import numpy as np

from .matalg import adjoint
from .calculus import FrameGeometry
from .braiding import Braiding, make_braiding, sigma_from_tau
from .connection import Connection, solve_torsionfree_chi, torsionfree_connection
from .frametensor import antisymmetrizer_central, flip_central, identity_central

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[a, b, c] = 1.0
        eps[a, c, b] = -1.0
    return eps


def su2_flip_geometry() -> FrameGeometry:
    """N = 2, n = 3, lam_a = -(i/2) Pauli_a, antisymmetric wedge, flip sigma.

    F^c_{ab} = eps_{abc}, K = 0, metric g = delta.  Passes every structural
    check exactly (up to rounding).
    """
    lam = np.array([-0.5j * p for p in PAULI])
    return FrameGeometry(
        N=2, n=3, lam=lam,
        P=antisymmetrizer_central(3),
        S=flip_central(3),
        F=levi_civita().astype(complex),
        K=np.zeros((3, 3), dtype=complex),
        g=np.eye(3, dtype=complex),
    )


def su2_braiding() -> Braiding:
    return make_braiding(flip_central(3))


def su2_torsionfree_connection() -> Connection:
    """D_(0) (which has omega = 0 here) plus the minimum-norm central chi
    solving the torsion-free condition; for this geometry chi^a_{bc} = eps_{bca}/2."""
    geom = su2_flip_geometry()
    return torsionfree_connection(geom, su2_braiding())


def phase_twist_braiding(n: int, phases: dict[tuple[int, int], complex],
                         tol: float = 1e-12) -> tuple[Braiding, np.ndarray]:
    """Diagonal-type braiding S^{ab}_{cd} = L_{ab} delta^a_d delta^b_c.

    ``phases`` maps 0-based pairs (a, b) with a < b to unit-modulus L_{ab};
    the reciprocal pair and the diagonal are forced by the constraints
    |L_{ab}| = 1, L_{ab} L_{ba} = 1, L_{aa} = 1.  Returns the braiding and
    the matching projector P = (delta - S)/2, which satisfies
    pi o (sigma + 1) = 0 by construction.
    """
    lam = np.ones((n, n), dtype=complex)
    for (a, b), ph in phases.items():
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair {(a, b)} out of range for n={n}")
        if a == b:
            if abs(ph - 1.0) > tol:
                raise ValueError(f"diagonal phase L[{a},{a}] must be 1, got {ph}")
            continue
        if abs(abs(ph) - 1.0) > tol:
            raise ValueError(f"phase L[{a},{b}] = {ph} is not unit modulus")
        lam[a, b] = ph
        lam[b, a] = 1.0 / ph
    s = np.zeros((n, n, n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            s[a, b, b, a] = lam[a, b]
    p = 0.5 * (identity_central(n) - s)
    return make_braiding(s), p


def random_phase_twist(seed: int, n: int) -> tuple[Braiding, np.ndarray]:
    """Seeded phase-twist braiding with uniform random phases on the upper triangle."""
    rng = np.random.default_rng(seed)
    phases = {(a, b): np.exp(2j * np.pi * rng.uniform())
              for a in range(n) for b in range(a + 1, n)}
    return phase_twist_braiding(n, phases)


def random_element(rng: np.random.Generator, N: int) -> np.ndarray:
    """Complex matrix with entries uniform over the unit square."""
    return rng.uniform(0, 1, (N, N)) + 1j * rng.uniform(0, 1, (N, N))


def random_antihermitian(rng: np.random.Generator, N: int) -> np.ndarray:
    a = random_element(rng, N)
    return (a - adjoint(a)) / 2


def random_projector(rng: np.random.Generator, n: int) -> np.ndarray:
    """Hermitian projector on the n^2-dimensional index-pair space.

    Eigenvalues of a random hermitian matrix are rounded to {0, 1} at their
    midpoint, which guarantees idempotence to machine precision.
    """
    h = rng.uniform(0, 1, (n * n, n * n)) + 1j * rng.uniform(0, 1, (n * n, n * n))
    h = (h + h.conj().T) / 2
    w, v = np.linalg.eigh(h)
    rounded = (w >= (w.min() + w.max()) / 2).astype(float)
    m = (v * rounded) @ v.conj().T
    return m.reshape(n, n, n, n)


def random_tau(seed: int, n: int = 3) -> np.ndarray:
    """Seeded rank-4 tensor with entries uniform over the unit square."""
    rng = np.random.default_rng(seed)
    return rng.uniform(0, 1, (n,) * 4) + 1j * rng.uniform(0, 1, (n,) * 4)


def random_geometry(seed: int, n: int = 3, N: int = 2, *,
                    force_f_zero: bool = False,
                    tau: np.ndarray | None = None) -> FrameGeometry:
    """Seeded geometry: antihermitianized lam, spectral-rounded projector P,
    sigma from tau (default tau = 2, i.e. S = 1 - 2P), and F, K fitted to the
    structure condition by least squares.

    The fit is exact only when 2 lam lam P happens to lie in the span of
    {lam_c, 1}; otherwise the geometry is a residual fixture whose structure
    check reports the leftover.  With ``force_f_zero`` only K is fitted.
    """
    rng = np.random.default_rng(seed)
    lam = np.array([random_antihermitian(rng, N) for _ in range(n)])
    p = random_projector(rng, n)
    if tau is None:
        s = identity_central(n) - 2.0 * p
        braid = make_braiding(s)
    else:
        braid = sigma_from_tau(tau, p)
    target = 2.0 * np.einsum('cij,djk,cdab->abik', lam, lam, p)
    # fit target_{ab} ~ lam_c F^c_{ab} + K_{ab} 1 columnwise over (a, b)
    basis = list(lam) if not force_f_zero else []
    basis.append(np.eye(N, dtype=complex))
    amat = np.stack([m.reshape(-1) for m in basis], axis=1)
    f = np.zeros((n, n, n), dtype=complex)
    k = np.zeros((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            sol, *_ = np.linalg.lstsq(amat, target[a, b].reshape(-1), rcond=None)
            if force_f_zero:
                k[a, b] = sol[0]
            else:
                f[:, a, b] = sol[:-1]
                k[a, b] = sol[-1]
    # keep F in the image of P on its lower pair, as required of geometries
    f = np.einsum('abc,bcde->ade', f, p)
    return FrameGeometry(N=N, n=n, lam=lam, P=p, S=braid.S, F=f, K=k,
                         g=np.eye(n, dtype=complex))


def random_field(rng: np.random.Generator, n: int, N: int, degree: int):
    from .frametensor import FrameTensorField
    shape = (n,) * degree + (N, N)
    return FrameTensorField(n, rng.uniform(0, 1, shape) + 1j * rng.uniform(0, 1, shape))


# registry used by the command-line `fixture` subcommand
FIXTURE_NAMES = ("su2-flip", "su2-torsion-free", "phase-twist", "random")


def build_fixture(name: str, *, seed: int = 42, n: int = 3):
    """Returns (kind, payload) where kind is 'geometry' or 'braiding'."""
    if name == "su2-flip":
        return "geometry", su2_flip_geometry()
    if name == "su2-torsion-free":
        geom = su2_flip_geometry()
        chi = solve_torsionfree_chi(geom, su2_braiding())
        return "geometry", FrameGeometry(
            N=geom.N, n=geom.n, lam=geom.lam, P=geom.P, S=geom.S,
            F=geom.F, K=geom.K, g=geom.g, chi=chi)
    if name == "phase-twist":
        b, p = random_phase_twist(seed, n)
        return "braiding", (b, p)
    if name == "random":
        return "geometry", random_geometry(seed, n=n)
    raise ValueError(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")
