"""The star structure on forms and tensor fields.

The star of a degree-p field is realized on coefficients as: adjoint every
coefficient, then contract with a rank-2p central tensor J (an antilinear
basis operator).  J is built from the inverse-order permutation word with
each adjacent transposition replaced by the braiding:

    j_n = [sigma word for the reverse permutation] o l_n,

where l_n reverses the index order and adjoints the coefficient.  On a
field f_A theta^A this gives

    star(T)_B = sum_A J^{A}{}_{B} adjoint(f_A).

Antilinear maps compose through conjugation; the helpers at the bottom fix
that bookkeeping once so that equivalent word decompositions can be
compared tensor-to-tensor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matalg import adjoint
from .calculus import FrameGeometry, differential0
from .braiding import Braiding
from .connection import Connection, d2, dn
from .frametensor import (
    FrameTensorField,
    basis_field,
    central_as_matrix,
    flip_central,
    lift_central,
    matrix_as_central,
    max_coeff_norm,
    reversal_central,
    tensor_product,
    wedge_project,
    word_tensor,
)


# ---------------------------------------------------------------------------
# permutation words


@dataclass(frozen=True)
class PermutationWord:
    """A word in adjacent transpositions; the rightmost letter acts first."""

    n_strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for i in self.letters:
            if not 1 <= i <= self.n_strands - 1:
                raise ValueError(f"letter {i} out of range for {self.n_strands} strands")

    def permutation(self) -> tuple[int, ...]:
        """Evaluate the word on (1, ..., n) by swapping positions."""
        items = list(range(1, self.n_strands + 1))
        for i in reversed(self.letters):
            items[i - 1], items[i] = items[i], items[i - 1]
        return tuple(items)


def reverse_word(n: int) -> PermutationWord:
    """Canonical reduced word for the inverse-order permutation of n objects.

    W_2 = [1]; W_n = W_{n-1} ++ [n-1, n-2, ..., 1].
    """
    if n < 2:
        raise ValueError(f"need at least 2 strands, got {n}")
    letters: list[int] = [1]
    for m in range(3, n + 1):
        letters += list(range(m - 1, 0, -1))
    return PermutationWord(n, tuple(letters))


# ---------------------------------------------------------------------------
# the central tensors I, J, J^(n)


def build_I(p: np.ndarray) -> np.ndarray:
    """I^{ab}_{cd} = -P^{ba}_{cd}: the star on projected 2-forms."""
    return -np.einsum('bacd->abcd', np.asarray(p, dtype=complex))


def build_J(s: np.ndarray) -> np.ndarray:
    """J^{ab}_{cd} = S^{ba}_{cd}: the star on 1-form x 1-form."""
    return np.einsum('bacd->abcd', np.asarray(s, dtype=complex))


def build_jn(b: Braiding, n: int, word: PermutationWord | None = None) -> np.ndarray:
    """The rank-2n star tensor J^(n).

    The braiding word for the inverse-order permutation is composed and the
    upper index block is reversed (the action of l_n on basis monomials).
    Any ``word`` evaluating to the inverse-order permutation is accepted;
    under the braid equation all such words give the same tensor.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if n == 1:
        return np.eye(b.n, dtype=complex)
    if word is None:
        word = reverse_word(n)
    else:
        if word.n_strands != n:
            raise ValueError(f"word is on {word.n_strands} strands, expected {n}")
        if word.permutation() != tuple(range(n, 0, -1)):
            raise ValueError("word does not evaluate to the inverse-order permutation")
    w = word_tensor(b.S, n, word.letters)
    perm = list(range(n - 1, -1, -1)) + list(range(n, 2 * n))
    return np.ascontiguousarray(np.transpose(w, perm))


@dataclass(frozen=True)
class InvolutionTensors:
    """The star tensors attached to a (P, S) pair, J^(n) up to a max order."""

    I: np.ndarray
    J: np.ndarray
    jn: dict  # order -> rank-2n tensor

    @classmethod
    def build(cls, b: Braiding, p: np.ndarray, max_order: int = 4) -> "InvolutionTensors":
        jn = {k: build_jn(b, k) for k in range(1, max_order + 1)}
        return cls(I=build_I(p), J=build_J(b.S), jn=jn)


# ---------------------------------------------------------------------------
# the star on fields


def star_form(t: FrameTensorField, jn: np.ndarray | None = None) -> FrameTensorField:
    """Antilinear star of a degree-p field: star(T)_B = J^{A}_{B} adjoint(T_A).

    Degree 0 is the plain adjoint and degree 1 uses the identity tensor
    (the frame is hermitian); higher degrees need the matching J^(p).
    """
    p = t.degree
    adj = adjoint(t.coeffs)
    if p == 0:
        return FrameTensorField(t.n, adj)
    if jn is None:
        if p == 1:
            jn = np.eye(t.n, dtype=complex)
        else:
            raise ValueError(f"degree {p} needs an explicit rank-{2 * p} star tensor")
    jn = np.asarray(jn)
    if jn.ndim != 2 * p:
        raise ValueError(f"star tensor of rank {jn.ndim} does not match degree {p}")
    out = np.tensordot(jn, adj, axes=(list(range(p)), list(range(p))))
    return FrameTensorField(t.n, out)


# ---------------------------------------------------------------------------
# residual checks


def check_jn_involutive(b: Braiding, n: int) -> float:
    """Max entry of conj(J^(n)) o J^(n) - identity."""
    j = build_jn(b, n)
    jm = central_as_matrix(j)
    return float(np.max(np.abs(np.conj(jm) @ jm - np.eye(jm.shape[0]))))


def check_fifa(b: Braiding, n: int, i: int) -> float:
    """Residual of sigma_{i(i+1)} o l_n = l_n o sigma^{-1}_{(n-i)(n+1-i)}.

    Both sides are antilinear; on matrices the identity reads
    R S_i = conj(S^{-1}_{n-i}) R with R the index reversal.
    """
    if not 1 <= i <= n - 1:
        raise ValueError(f"position {i} out of range for {n} strands")
    s_inv = b.require_inverse()
    r = central_as_matrix(reversal_central(b.n, n))
    lhs = r @ central_as_matrix(lift_central(b.S, n, i))
    rhs = np.conj(central_as_matrix(lift_central(s_inv, n, n - i))) @ r
    return float(np.max(np.abs(lhs - rhs)))


def check_connection_reality(c: Connection, j: np.ndarray) -> float:
    """Residual of (omega^a_{bc})* = omega^a_{de} (J^{de}_{bc})*."""
    lhs = adjoint(c.omega)
    rhs = np.einsum('adeij,debc->abcij', c.omega, np.conj(np.asarray(j)))
    return max_coeff_norm(FrameTensorField(c.geom.n, lhs - rhs))


def check_D2_reality(c: Connection, b: Braiding) -> tuple[float, float, float]:
    """The three second-order reality residuals:

    * strong form  D_2 o j_2 = j_3 o D_2,
    * the four-term coefficient identity in J and omega,
    * the braided form  D_2 o sigma = sigma_23 o D_2.

    These are provably equivalent once the connection itself is real; the
    caller is responsible for cross-checking them (see the verify runner).
    """
    from .frametensor import apply_central_at
    geom = c.geom
    n, N = geom.n, geom.N
    j2 = build_jn(b, 2)
    j3 = build_jn(b, 3)
    strong = 0.0
    braided = 0.0
    for idx in np.ndindex(n, n):
        basis = basis_field(n, N, idx)
        lhs = d2(c, b, star_form(basis, j2))
        rhs = star_form(d2(c, b, basis), j3)
        strong = max(strong, max_coeff_norm(lhs - rhs))
        lhs2 = d2(c, b, apply_central_at(basis, b.S, 1))
        rhs2 = apply_central_at(d2(c, b, basis), b.S, 2)
        braided = max(braided, max_coeff_norm(lhs2 - rhs2))
    j = build_J(b.S)
    om = c.omega
    t1 = np.einsum('abpe,pcdij->abcdeij', j, om)
    t2 = np.einsum('apde,bcpij->abcdeij', j, om)
    t3 = np.einsum('abpq,rpcd,qreij->abcdeij', j, j, om)
    t4 = np.einsum('qbcp,rpde,aqrij->abcdeij', j, j, om)
    coeff = float(np.max(np.linalg.norm(t1 - t2 + t3 - t4, axis=(-2, -1))))
    return strong, coeff, braided


def check_Dn_reality(c: Connection, b: Braiding, n: int) -> float:
    """Residual of D_n o j_n = j_{n+1} o D_n over all degree-n basis monomials.

    Additivity plus the Leibniz structure make the basis monomials
    sufficient.  For n = 1 this is the basic reality condition
    D xi* = (D xi)*.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    geom = c.geom
    jn_t = build_jn(b, n)
    jn1_t = build_jn(b, n + 1)
    worst = 0.0
    for idx in np.ndindex(*(geom.n,) * n):
        basis = basis_field(geom.n, geom.N, idx)
        lhs = dn(c, b, star_form(basis, jn_t))
        rhs = star_form(dn(c, b, basis), jn1_t)
        worst = max(worst, max_coeff_norm(lhs - rhs))
    return worst


def check_wedge_star(geom: FrameGeometry, b: Braiding,
                     seed: int = 42, samples: int = 8) -> float:
    """Residual of the sign rule for the star of wedge products.

    Two routes are compared: the tensor identity that the star of a
    projected 2-form equals minus its reversed projection, and the field
    identity (df dg)* = -dg* df* on seeded random elements.  Returns the
    max of both residuals.
    """
    p_t = geom.P
    j = build_J(b.S)
    lhs = np.einsum('abcd,cdef,efgh->abgh', np.conj(p_t), j, p_t)
    rhs = -np.einsum('baef,efgh->abgh', p_t, p_t)
    tensor_res = float(np.max(np.abs(lhs - rhs)))

    rng = np.random.default_rng(seed)
    j2 = build_jn(b, 2)
    field_res = 0.0
    for _ in range(samples):
        f = rng.uniform(0, 1, (geom.N, geom.N)) + 1j * rng.uniform(0, 1, (geom.N, geom.N))
        g = rng.uniform(0, 1, (geom.N, geom.N)) + 1j * rng.uniform(0, 1, (geom.N, geom.N))
        df = differential0(f, geom)
        dg = differential0(g, geom)
        prod = wedge_project(tensor_product(df, dg), 1, p_t)
        lhs_f = wedge_project(star_form(prod, j2), 1, p_t)
        rhs_f = wedge_project(tensor_product(star_form(dg), star_form(df)), 1, p_t)
        field_res = max(field_res, max_coeff_norm(lhs_f + rhs_f))
    return max(tensor_res, field_res)


def check_metric_reality(g: np.ndarray, s: np.ndarray) -> float:
    """Residual of S^{ab}_{cd} g^{cd} = (g^{ba})*."""
    g = np.asarray(g, dtype=complex)
    s = getattr(s, "S", s)
    lhs = np.einsum('abcd,cd->ab', np.asarray(s, dtype=complex), g)
    return float(np.max(np.abs(lhs - np.conj(g.T))))


# ---------------------------------------------------------------------------
# antilinear composition helpers (for comparing equivalent decompositions)


def antilinear_then_linear(m_anti: np.ndarray, mats_linear) -> np.ndarray:
    """Tensor of L_k o ... o L_1 o A, A antilinear, L_i linear (in application order)."""
    out = central_as_matrix(m_anti)
    for lin in mats_linear:
        out = out @ central_as_matrix(lin)
    return out


def jn_recursive(b: Braiding, form: str) -> np.ndarray:
    """J^(n) through the equivalent recursive decompositions.

    ``'half2'``: j_3 = sigma_12 sigma_23 eps_23 eps_12 (j_1 x j_2);
    ``'half3'``: j_4 = sigma_12 sigma_23 sigma_34 eps_34 eps_23 eps_12 (j_1 x j_3);
    ``'pair'`` : j_4 = sigma_23 sigma_34 sigma_12 sigma_23 eps_23 eps_12 eps_34 eps_23 (j_2 x j_2).

    All agree with the direct word construction once the braid equation
    holds.
    """
    n = b.n
    eps = flip_central(n)
    if form == "half2":
        strands = 3
        anti = np.kron(np.eye(n), central_as_matrix(build_jn(b, 2)))
        linear = [lift_central(eps, 3, 1), lift_central(eps, 3, 2),
                  lift_central(b.S, 3, 2), lift_central(b.S, 3, 1)]
    elif form == "half3":
        strands = 4
        anti = np.kron(np.eye(n), central_as_matrix(build_jn(b, 3)))
        linear = [lift_central(eps, 4, 1), lift_central(eps, 4, 2), lift_central(eps, 4, 3),
                  lift_central(b.S, 4, 3), lift_central(b.S, 4, 2), lift_central(b.S, 4, 1)]
    elif form == "pair":
        strands = 4
        j2m = central_as_matrix(build_jn(b, 2))
        anti = np.kron(j2m, j2m)
        linear = [lift_central(eps, 4, 2), lift_central(eps, 4, 3),
                  lift_central(eps, 4, 1), lift_central(eps, 4, 2),
                  lift_central(b.S, 4, 2), lift_central(b.S, 4, 1),
                  lift_central(b.S, 4, 3), lift_central(b.S, 4, 2)]
    else:
        raise ValueError(f"unknown recursive form {form!r}")
    return matrix_as_central(antilinear_then_linear(matrix_as_central(anti, n), linear), n)
