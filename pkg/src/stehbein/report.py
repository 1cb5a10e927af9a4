"""Verification report assembly and the check orchestrator.

Every check is a residual plus the identity it instantiates (recorded as a
formula string in ``equation_anchor``); the tolerance decides pass/fail.
Checks whose prerequisites are absent from the input are reported as
skipped, never silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .calculus import (
    FrameGeometry,
    check_structure,
    check_theta_squared,
    differential0,
    differential1,
)
from .braiding import (
    Braiding,
    SingularBraidingError,
    check_braid,
    check_sigma_consistency,
    check_yang_baxter,
    make_braiding,
)
from .connection import (
    Connection,
    central_connection,
    check_left_leibniz,
    check_right_leibniz,
    d0_connection,
    dn,
    torsion,
    torsionfree_connection,
    check_metric_symmetry,
    check_metric_compatibility,
)
from .involution import (
    build_J,
    check_connection_reality,
    check_D2_reality,
    check_Dn_reality,
    check_fifa,
    check_jn_involutive,
    check_metric_reality,
    check_wedge_star,
)
from .frametensor import FrameTensorField, apply_central_at, basis_field, max_coeff_norm
from .fixtures import random_element, random_field

DEFAULT_TOL = 1e-9

ANCHORS = {
    "structure": "2 λ_c λ_d P^{cd}_{ab} − λ_c F^c_{ab} − K_{ab} = 0",
    "theta-squared": "dθ + θ² = ½ K_{ab} θ^a θ^b",
    "d-squared": "d² = 0",
    "sigma-consistency": "π∘(σ+1) = 0",
    "braid": "σ₁₂σ₂₃σ₁₂ = σ₂₃σ₁₂σ₂₃",
    "yang-baxter": "J^{ab}_{pq} J^{pc}_{dr} J^{qr}_{ef} = J^{bc}_{pq} J^{aq}_{rf} J^{rp}_{de}",
    "sigma-unitarity": "(S^{ba}_{cd})* S^{dc}_{ef} = δ^a_e δ^b_f",
    "leibniz-left": "D(fξ) = df⊗ξ + f Dξ",
    "leibniz-right": "D(ξf) = σ(ξ⊗df) + (Dξ)f",
    "torsion": "Θ^a = dθ^a − π∘Dθ^a  ⇔  ω^a_{de} P^{de}_{bc} = ½ C^a_{bc}",
    "metric-symmetry": "g∘σ ∝ g",
    "metric-compat-first": "ω^a_{bc} + ω_{cd}^e S^{ad}_{be} = 0",
    "metric-compat-second": "S^{ae}_{df} g^{fg} S^{bc}_{eg} = g^{ab} δ^c_d",
    "metric-reality": "S^{ab}_{cd} g^{cd} = (g^{ba})*",
    "connection-reality": "(ω^a_{bc})* = ω^a_{de} (J^{de}_{bc})*",
    "wedge-star": "(ξη)* = −η*ξ*",
    "d2-reality-strong": "D₂∘ȷ₂ = ȷ₃∘D₂",
    "d2-reality-coeffs":
        "J^{ab}_{pe}ω^p_{cd} − J^{ap}_{de}ω^b_{cp} + J^{ab}_{pq}J^{rp}_{cd}ω^q_{re}"
        " − J^{qb}_{cp}J^{rp}_{de}ω^a_{qr} = 0",
    "d2-reality-braided": "D₂∘σ = σ₂₃∘D₂",
    "d2-reality-triangle": "D₂∘ȷ₂ = ȷ₃∘D₂  ⇔  σ-form  ⇔  coefficient form",
    "jn-involutive": "conj(J^(n)) ∘ J^(n) = 1",
    "fifa": "σ_{i(i+1)} ℓ_n = ℓ_n σ⁻¹_{(n−i)(n+1−i)}",
    "dn-sigma-lemma": "D_n∘σ_{(i−1)i} = σ_{i(i+1)}∘D_n",
    "dn-reality": "D_n∘ȷ_n = ȷ_{n+1}∘D_n",
    "i-weak-yang-baxter": "weak Yang-Baxter property of I = −Pᵀ",
}

# group names accepted by --checks
GROUPS = {
    "structure": ["structure"],
    "theta2": ["theta-squared"],
    "d2": ["d-squared"],
    "sigma-consistency": ["sigma-consistency"],
    "braid": ["braid"],
    "yb": ["yang-baxter"],
    "unitarity": ["sigma-unitarity"],
    "leibniz": ["leibniz-left", "leibniz-right"],
    "torsion": ["torsion"],
    "metric": ["metric-symmetry", "metric-compat-first",
               "metric-compat-second", "metric-reality"],
    "connection-reality": ["connection-reality"],
    "wedge-star": ["wedge-star"],
    "d2-reality": ["d2-reality-strong", "d2-reality-coeffs",
                   "d2-reality-braided", "d2-reality-triangle"],
    "jn": ["jn-involutive"],
    "fifa": ["fifa"],
    "dn-lemma": ["dn-sigma-lemma"],
    "dn-reality": ["dn-reality"],
}


@dataclass
class CheckResult:
    name: str
    equation_anchor: str
    residual: float | None
    tolerance: float
    status: str  # pass | fail | skipped
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "equation_anchor": self.equation_anchor,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "status": self.status,
            "note": self.note,
        }


@dataclass
class VerificationReport:
    tolerance: float
    seed: int
    max_order: int
    source: str = ""
    checks: list = field(default_factory=list)

    def add(self, name: str, anchor_key: str, residual: float | None,
            note: str = "", skipped: bool = False) -> CheckResult:
        if skipped or residual is None:
            status = "skipped"
            residual = None
        else:
            residual = float(residual)
            status = "pass" if residual <= self.tolerance else "fail"
        result = CheckResult(name, ANCHORS[anchor_key], residual,
                             self.tolerance, status, note or "")
        self.checks.append(result)
        return result

    @property
    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def all_pass(self) -> bool:
        return self.counts["fail"] == 0

    def failed_names(self) -> list:
        return [c.name for c in self.checks if c.status == "fail"]

    def to_dict(self) -> dict:
        from . import __version__
        return {
            "tool": "stehbein",
            "version": __version__,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "max_order": self.max_order,
            "input": self.source,
            "summary": self.counts,
            "checks": [c.to_dict() for c in self.checks],
        }

    def summary_lines(self) -> list:
        width = max((len(c.name) for c in self.checks), default=10)
        lines = []
        for c in self.checks:
            res = f"{c.residual:.3e}" if c.residual is not None else "-"
            line = f"{c.status.upper():7s} {c.name:<{width}s}  residual={res:<11s} tol={c.tolerance:.1e}"
            if c.note:
                line += f"  [{c.note}]"
            lines.append(line)
        cts = self.counts
        lines.append(f"{cts['pass']} passed, {cts['fail']} failed, {cts['skipped']} skipped")
        return lines


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "stehbein verification report",
    "type": "object",
    "required": ["tool", "version", "tolerance", "seed", "max_order",
                 "input", "summary", "checks"],
    "properties": {
        "tool": {"type": "string"},
        "version": {"type": "string"},
        "tolerance": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer"},
        "max_order": {"type": "integer", "minimum": 2},
        "input": {"type": "string"},
        "summary": {
            "type": "object",
            "required": ["pass", "fail", "skipped"],
            "properties": {
                "pass": {"type": "integer", "minimum": 0},
                "fail": {"type": "integer", "minimum": 0},
                "skipped": {"type": "integer", "minimum": 0},
            },
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "equation_anchor", "residual",
                             "tolerance", "status", "note"],
                "properties": {
                    "name": {"type": "string"},
                    "equation_anchor": {"type": "string"},
                    "residual": {"type": ["number", "null"]},
                    "tolerance": {"type": "number"},
                    "status": {"enum": ["pass", "fail", "skipped"]},
                    "note": {"type": "string"},
                },
            },
        },
    },
}


def _selected(checks_filter, group: str) -> bool:
    return checks_filter is None or group in checks_filter


def resolve_connection(geom: FrameGeometry, braid: Braiding,
                       mode: str = "auto") -> tuple[Connection, str]:
    """Build the connection a geometry implies, returning it and a label."""
    if mode == "omega" or (mode == "auto" and geom.omega is not None):
        if geom.omega is None:
            raise ValueError("geometry has no explicit omega")
        return Connection(geom, geom.omega), "omega from input"
    if mode == "chi" or (mode == "auto" and geom.chi is not None):
        if geom.chi is None:
            raise ValueError("geometry has no chi")
        return central_connection(geom, geom.chi, braid), "D_(0) + chi from input"
    if mode == "torsion-free":
        return torsionfree_connection(geom, braid), "D_(0) + torsion-free chi"
    if mode in ("auto", "d0"):
        return d0_connection(geom, braid), "D_(0)"
    raise ValueError(f"unknown connection mode {mode!r}")


def sigma_unitarity_residual(s: np.ndarray) -> float:
    s = np.asarray(s)
    lhs = np.einsum('bacd,dcef->abef', np.conj(s), s)
    n = s.shape[0]
    eye2 = np.einsum('ae,bf->abef', np.eye(n), np.eye(n))
    return float(np.max(np.abs(lhs - eye2)))


def run_verify(loaded, *, tol: float = DEFAULT_TOL, checks=None,
               max_order: int = 4, seed: int = 42,
               connection_mode: str = "auto", source: str = "") -> VerificationReport:
    """Run the selected checks over a geometry or braiding input.

    ``loaded`` is a FrameGeometry or a (Braiding, P-or-None) pair as
    returned by the loader.  ``checks`` is an optional set of group names
    (see GROUPS); everything applicable runs by default.  Report order is
    deterministic.
    """
    report = VerificationReport(tolerance=tol, seed=seed, max_order=max_order,
                                source=str(source))
    if isinstance(loaded, FrameGeometry):
        geom = loaded
        braid = make_braiding(geom.S)
        p_tensor = geom.P
    else:
        geom = None
        braid, p_tensor = loaded

    NO_GEOM = "requires a geometry input"
    rng = np.random.default_rng(seed)

    def gate(group, names, anchor_keys, fn, *, needs_geom=False, needs=None):
        names = (names,) if isinstance(names, str) else tuple(names)
        anchor_keys = (anchor_keys,) if isinstance(anchor_keys, str) else tuple(anchor_keys)
        reason = None
        if not _selected(checks, group):
            reason = "not selected"
        elif needs_geom and geom is None:
            reason = NO_GEOM
        elif needs:
            reason = needs
        if reason is not None:
            for nm, ak in zip(names, anchor_keys):
                report.add(nm, ak, None, note=reason, skipped=True)
            return
        try:
            fn()
        except SingularBraidingError as exc:
            for nm, ak in zip(names, anchor_keys):
                report.add(nm, ak, None, note=f"skipped: {exc}", skipped=True)

    conn = conn_label = None
    conn_error = None
    if geom is not None:
        try:
            conn, conn_label = resolve_connection(geom, braid, connection_mode)
        except ValueError as exc:
            conn_error = str(exc)

    # ---- frame calculus -------------------------------------------------
    gate("structure", "structure", "structure",
         lambda: report.add("structure", "structure", check_structure(geom)),
         needs_geom=True)
    gate("theta2", "theta-squared", "theta-squared",
         lambda: report.add("theta-squared", "theta-squared", check_theta_squared(geom)),
         needs_geom=True)

    def d_squared():
        worst = 0.0
        for _ in range(100):
            f = random_element(rng, geom.N)
            worst = max(worst, max_coeff_norm(differential1(differential0(f, geom), geom)))
        report.add("d-squared", "d-squared", worst, note="100 seeded elements")
    gate("d2", "d-squared", "d-squared", d_squared, needs_geom=True)

    # ---- braiding -------------------------------------------------------
    gate("sigma-consistency", "sigma-consistency", "sigma-consistency",
         lambda: report.add("sigma-consistency", "sigma-consistency",
                            check_sigma_consistency(braid, p_tensor)),
         needs=None if p_tensor is not None else "no projector in input")
    gate("braid", "braid", "braid",
         lambda: report.add("braid", "braid", check_braid(braid)))
    gate("yb", "yang-baxter", "yang-baxter",
         lambda: report.add("yang-baxter", "yang-baxter",
                            check_yang_baxter(build_J(braid.S))))
    gate("unitarity", "sigma-unitarity", "sigma-unitarity",
         lambda: report.add("sigma-unitarity", "sigma-unitarity",
                            sigma_unitarity_residual(braid.S)))

    # ---- connection -----------------------------------------------------
    conn_needs = None
    if geom is None:
        conn_needs = NO_GEOM
    elif conn is None:
        conn_needs = f"no connection available ({conn_error})"

    def leibniz(which):
        worst = 0.0
        for _ in range(50):
            f = random_element(rng, geom.N)
            xi = random_field(rng, geom.n, geom.N, 1)
            if which == "left":
                worst = max(worst, check_left_leibniz(conn, f, xi))
            else:
                worst = max(worst, check_right_leibniz(conn, braid, f, xi))
        report.add(f"leibniz-{which}", f"leibniz-{which}", worst,
                   note=f"{conn_label}; 50 seeded pairs")
    gate("leibniz", "leibniz-left", "leibniz-left", lambda: leibniz("left"),
         needs=conn_needs)
    gate("leibniz", "leibniz-right", "leibniz-right", lambda: leibniz("right"),
         needs=conn_needs)

    def torsion_check():
        two_forms, alg = torsion(conn)
        # cross-check: the 2-form route must reproduce the algebraic tensor
        from .calculus import maurer_cartan
        mc = maurer_cartan(geom)
        algt = np.einsum('adeij,debc->abcij', conn.omega, geom.P) - 0.5 * mc
        worst = 0.0
        for a, tf in enumerate(two_forms):
            worst = max(worst, max_coeff_norm(
                tf - FrameTensorField(geom.n, algt[a])))
        note = f"{conn_label}; torsion norm {max(max_coeff_norm(t) for t in two_forms):.3e}, algebraic {alg:.3e}"
        report.add("torsion", "torsion", worst, note=note)
    gate("torsion", "torsion", "torsion", torsion_check, needs=conn_needs)

    # ---- metric ---------------------------------------------------------
    metric_needs = conn_needs if conn_needs else (
        None if (geom is not None and geom.g is not None) else "no metric in input")

    def metric_symmetry():
        res, c = check_metric_symmetry(geom.g, braid)
        report.add("metric-symmetry", "metric-symmetry", res,
                   note=f"proportionality c = {c.real:.6g}{c.imag:+.3g}i")
    gate("metric", "metric-symmetry", "metric-symmetry", metric_symmetry,
         needs=metric_needs)

    def metric_compat():
        try:
            r1, r2 = check_metric_compatibility(conn, braid, geom.g)
        except ValueError as exc:
            report.add("metric-compat-first", "metric-compat-first", None,
                       note=str(exc), skipped=True)
            report.add("metric-compat-second", "metric-compat-second", None,
                       note=str(exc), skipped=True)
            return
        report.add("metric-compat-first", "metric-compat-first", r1,
                   note="indices lowered with g_{ab} = (g^{ab})^{-1}")
        report.add("metric-compat-second", "metric-compat-second", r2)
    gate("metric", ("metric-compat-first", "metric-compat-second"),
         ("metric-compat-first", "metric-compat-second"), metric_compat,
         needs=metric_needs)
    gate("metric", "metric-reality", "metric-reality",
         lambda: report.add("metric-reality", "metric-reality",
                            check_metric_reality(geom.g, braid.S)),
         needs=metric_needs)

    # ---- involution -----------------------------------------------------
    gate("connection-reality", "connection-reality", "connection-reality",
         lambda: report.add("connection-reality", "connection-reality",
                            check_connection_reality(conn, build_J(braid.S)),
                            note=conn_label or ""),
         needs=conn_needs)
    gate("wedge-star", "wedge-star", "wedge-star",
         lambda: report.add("wedge-star", "wedge-star",
                            check_wedge_star(geom, braid, seed=seed)),
         needs_geom=True)

    def d2_reality():
        strong, coeffs, braided = check_D2_reality(conn, braid)
        report.add("d2-reality-strong", "d2-reality-strong", strong, note=conn_label)
        report.add("d2-reality-coeffs", "d2-reality-coeffs", coeffs)
        report.add("d2-reality-braided", "d2-reality-braided", braided)
        real1 = check_connection_reality(conn, build_J(braid.S))
        residuals = [strong, coeffs, braided]
        if real1 > tol:
            report.add("d2-reality-triangle", "d2-reality-triangle", None,
                       note=f"equivalence needs a real connection "
                            f"(connection-reality residual {real1:.3e})", skipped=True)
            return
        lo, hi = min(residuals), max(residuals)
        inconsistent = lo <= tol < hi / 10
        report.add("d2-reality-triangle", "d2-reality-triangle",
                   (hi - lo) if inconsistent else 0.0,
                   note="internal-consistency error: provably equivalent residuals disagree"
                   if inconsistent else "three equivalent forms agree")
    gate("d2-reality",
         ("d2-reality-strong", "d2-reality-coeffs", "d2-reality-braided",
          "d2-reality-triangle"),
         ("d2-reality-strong", "d2-reality-coeffs", "d2-reality-braided",
          "d2-reality-triangle"),
         d2_reality, needs=conn_needs)

    # ---- higher orders --------------------------------------------------
    braid_res = check_braid(braid)
    for order in range(2, max_order + 1):
        note = "" if braid_res <= 100 * tol else f"braid residual {braid_res:.3e}"
        gate("jn", f"jn-involutive-{order}", "jn-involutive",
             lambda o=order, nt=note: report.add(
                 f"jn-involutive-{o}", "jn-involutive", check_jn_involutive(braid, o), note=nt))
    for order in range(2, max_order + 1):
        def fifa_all(o=order):
            worst = max(check_fifa(braid, o, i) for i in range(1, o))
            report.add(f"fifa-{o}", "fifa", worst, note="max over all positions")
        gate("fifa", f"fifa-{order}", "fifa", fifa_all)

    def lemma_for(order):
        worst = 0.0
        for i in range(2, order + 1):
            for idx in np.ndindex(*(geom.n,) * order):
                basis = basis_field(geom.n, geom.N, idx)
                lhs = dn(conn, braid, apply_central_at(basis, braid.S, i - 1))
                rhs = apply_central_at(dn(conn, braid, basis), braid.S, i)
                worst = max(worst, max_coeff_norm(lhs - rhs))
        report.add(f"dn-sigma-lemma-{order}", "dn-sigma-lemma", worst, note=conn_label)
    for order in range(2, max_order + 1):
        gate("dn-lemma", f"dn-sigma-lemma-{order}", "dn-sigma-lemma",
             lambda o=order: lemma_for(o), needs=conn_needs)

    for order in range(1, max_order + 1):
        gate("dn-reality", f"dn-reality-{order}", "dn-reality",
             lambda o=order: report.add(
                 f"dn-reality-{o}", "dn-reality", check_Dn_reality(conn, braid, o),
                 note=conn_label),
             needs=conn_needs)

    # surfaced but never evaluated: the weak Yang-Baxter property of -P^T
    # has no stated form to check
    report.add("i-weak-yang-baxter", "i-weak-yang-baxter", None,
               note="not checked (condition unspecified)", skipped=True)
    return report
