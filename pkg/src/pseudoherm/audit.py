"""Per-equation audit: one residual entry for every implemented equation.

Each entry carries a residual, an optional threshold, and a status:
``pass`` (residual below threshold), ``flag`` (threshold missed, or the
quantity was not computable at this configuration, e.g. no real metric),
or ``info`` (reported value with no pass/fail contract, used for the
printed formulas whose misprints the oracle adjudicates).

Reports are byte-deterministic for a fixed configuration: floats are
serialized at 17 significant digits and no timestamps enter the body.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .exceptions import NoRealMetricError, PseudohermError
from .fock import (
    FockDim,
    FockOperator,
    ModelParams,
    build_hamiltonian,
    canonical_pair,
    hermiticity_defect,
    ladder_ops,
    pt_symmetry_defect,
)
from .gridops import (
    Grid,
    GridOperator,
    applied_operator_defect,
    build_position_hamiltonian,
    chain_consistent_potential,
    cosh_pair,
    custom_gauge,
    d1_operator,
    d2_operator,
    gauge_chain_residual,
    gauge_equivalence_defect,
    log_rho_gauge,
    schrodinger_potential,
    u_eff,
)
from .io import format_float
from .metric import (
    CERT_DIM,
    _eta_array,
    _PaddedOracle,
    bogoliubov_defect,
    eps_paper_eq18,
    hermiticity_condition_residual,
    hermitian_equivalent_at,
    lambda_pair_paper,
    lambda_pair_z0,
    lambda_report,
    observable_defect,
    paper_f_coefficients,
    pseudo_hermiticity_defect,
    solve_eps,
    theta_closed_form_defect,
    xp_transform_report,
)
from .rosenmorse import (
    Superpotential,
    _stripped_potentials,
    build_intertwiner,
    factorization_defect,
    intertwiner_residual,
    rm_wavefunction,
    superpotential,
    superpotential_partners,
    susy_params_from_model,
)
from scipy import sparse

__all__ = ["RunConfig", "AuditEntry", "AuditReport", "run_audit", "EQUATION_IDS"]

#: implemented-equation coverage list; the audit emits exactly one entry each
EQUATION_IDS = tuple(f"Eq{k}" for k in range(1, 56))

#: grid used for the wavefunction certificates and chain entry (converged)
_RM_GRID = Grid(-12.0, 12.0, 4096)


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams
    z: float = 1.0
    dim: FockDim = FockDim(128, 8)
    grid: Grid = Grid(-12.0, 12.0, 2048)
    delta: float = 10.0
    eps_energy: float = 5.0
    n: int = 1
    branch: str = "plus"
    out: str | None = None
    format: str = "json"


@dataclass(frozen=True)
class AuditEntry:
    equation_id: str
    description: str
    residual: float | None
    threshold: float | None
    status: str


@dataclass(frozen=True)
class AuditReport:
    environment: dict
    entries: tuple[AuditEntry, ...] = field(default_factory=tuple)

    def entry(self, equation_id: str) -> AuditEntry:
        for e in self.entries:
            if e.equation_id == equation_id:
                return e
        raise KeyError(equation_id)

    def to_json(self) -> str:
        return _serialize(
            {
                "environment": self.environment,
                "entries": [
                    {
                        "equation_id": e.equation_id,
                        "description": e.description,
                        "residual": e.residual,
                        "threshold": e.threshold,
                        "status": e.status,
                    }
                    for e in self.entries
                ],
            }
        )


def _serialize(obj, indent: int = 0) -> str:
    """Deterministic JSON: insertion-ordered keys, 17-digit floats."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {_serialize(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}  {_serialize(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "null"
        return format_float(x)
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _entry(eq, desc, residual, threshold=None, kind="gated") -> AuditEntry:
    if residual is not None:
        residual = float(residual)
        if math.isnan(residual):
            residual = None
    if kind == "info":
        return AuditEntry(eq, desc, residual, None, "info")
    if residual is not None and threshold is not None and residual < threshold:
        return AuditEntry(eq, desc, residual, threshold, "pass")
    return AuditEntry(eq, desc, residual, threshold, "flag")


def _flagged(eq, desc, reason) -> AuditEntry:
    return AuditEntry(eq, desc + f" [{reason}]", None, None, "flag")


def run_audit(config: RunConfig) -> AuditReport:
    """Execute every verification operation and assemble the report.

    Scientific infeasibility (for instance no real metric at this z) is
    recorded as flag entries; only invalid configuration raises.
    """
    model = config.model
    z = config.z
    entries: list[AuditEntry] = []

    # --- Fock space block -------------------------------------------------
    H = build_hamiltonian(model, config.dim)
    a_op, ad_op = ladder_ops(config.dim)
    x_op, p_op = canonical_pair(model.omega, config.dim)

    # --- metric block (shared computations) --------------------------------
    infeasible_reason = None
    mp = None
    try:
        mp = solve_eps(z, model, branch=config.branch, verify=False)
    except NoRealMetricError as exc:
        infeasible_reason = f"no-real-metric: {exc}"

    if mp is not None:
        oracle = _PaddedOracle(mp, CERT_DIM.n_levels)
        h_cert, coeffs = hermitian_equivalent_at(mp, model, CERT_DIM)
        coeffs_paper = paper_f_coefficients(mp, model)
        eta_cert = FockOperator(CERT_DIM, _eta_array(mp, CERT_DIM.n_levels)[0])
        a_cert, _ = ladder_ops(CERT_DIM)
        lam = lambda_report(z, model, CERT_DIM)
        xp = xp_transform_report(mp, model, CERT_DIM)
        bog = bogoliubov_defect(mp, CERT_DIM)

    def metric_entry(eq, desc, value_fn, threshold=None, kind="gated"):
        if mp is None:
            return _flagged(eq, desc, infeasible_reason)
        return _entry(eq, desc, value_fn(), threshold, kind)

    entries.append(
        metric_entry(
            "Eq1",
            "pseudo-Hermiticity of H: ||eta H - H' eta|| / ||eta H|| on the certified block",
            lambda: pseudo_hermiticity_defect(mp, model, CERT_DIM),
            1e-8,
        )
    )
    entries.append(
        metric_entry(
            "Eq2",
            "observable test on the ladder operator a: ||eta a eta^-1 - a'|| / ||a'|| "
            "(nonzero: a is not an eta-pseudo-Hermitian observable)",
            lambda: observable_defect(a_cert, eta_cert),
            kind="info",
        )
    )
    entries.append(
        metric_entry(
            "Eq3",
            "Hermitian equivalent: hermiticity defect of h = Theta H Theta^-1",
            lambda: hermiticity_defect(h_cert),
            1e-8,
        )
    )
    entries.append(
        _entry(
            "Eq4",
            "PT symmetry of H: ||P conj(H) P - H|| / ||H||",
            pt_symmetry_defect(H),
            1e-14,
        )
    )
    reassembled = (
        math.sqrt(model.omega / 2.0) * x_op.entries
        + 1j * p_op.entries / math.sqrt(2.0 * model.omega)
    )
    entries.append(
        _entry(
            "Eq5",
            "boson operator reassembly: ||sqrt(om/2) x + i p/sqrt(2 om) - a||",
            float(np.linalg.norm(reassembled - a_op.entries)),
            1e-12,
        )
    )
    entries.append(
        metric_entry(
            "Eq6",
            "metric exponential roundtrip: ||Theta exp(-T) - 1|| on the certified block",
            lambda: oracle.roundtrip_residual(),
            1e-6,
        )
    )
    entries.append(
        metric_entry(
            "Eq7",
            "theta parameter: |theta^2 - (eps^2 + 4 kappa^2)|",
            lambda: abs(mp.theta**2 - (mp.eps_metric**2 + 4.0 * mp.kappa**2)),
            1e-13,
        )
    )
    entries.append(
        metric_entry(
            "Eq8",
            "Bogoliubov transform of a under Theta (hyperbolic closed form)",
            lambda: bog[0],
            1e-8,
        )
    )
    entries.append(
        metric_entry(
            "Eq9",
            "Bogoliubov transform of a' under Theta (hyperbolic closed form)",
            lambda: bog[1],
            1e-8,
        )
    )
    entries.append(
        metric_entry(
            "Eq10",
            "Hermiticity of h in coefficient form: |f2 + f3| (oracle extraction)",
            lambda: abs(coeffs.f2 + coeffs.f3),
            1e-9,
        )
    )
    def _insertion_identity() -> float:
        # crop the clean transformed ladder blocks first; their product then
        # differs from the transformed a'a only in the buffered band edge
        lhs = oracle.crop(oracle.conjugate(oracle.ad @ oracle.a))
        rhs = oracle.crop(oracle.conjugate(oracle.ad)) @ oracle.crop(oracle.conjugate(oracle.a))
        b = CERT_DIM.buffer
        k = CERT_DIM.n_levels - b
        return float(
            np.linalg.norm((lhs - rhs)[:k, :k]) / np.linalg.norm(lhs[:k, :k])
        )

    entries.append(
        metric_entry(
            "Eq11",
            "insertion identity: Theta a'a Theta^-1 vs (Theta a' Theta^-1)(Theta a Theta^-1)",
            _insertion_identity,
            1e-8,
        )
    )
    entries.append(
        metric_entry(
            "Eq12",
            "number-operator coefficient f1: printed formula vs oracle extraction",
            lambda: abs(coeffs_paper.f1 - coeffs.f1),
            1e-6,
        )
    )
    entries.append(
        metric_entry(
            "Eq13",
            "a^2 coefficient f2: printed formula minus oracle (suspected misprint, logged)",
            lambda: abs(coeffs_paper.f2 - coeffs.f2),
            kind="info",
        )
    )
    entries.append(
        metric_entry(
            "Eq14",
            "a'^2 coefficient f3: printed formula minus oracle (suspected misprint, logged)",
            lambda: abs(coeffs_paper.f3 - coeffs.f3),
            kind="info",
        )
    )
    entries.append(
        metric_entry(
            "Eq15",
            "L- factor: printed (cosh - eps/theta) minus sinh-corrected value (logged)",
            lambda: abs(coeffs_paper.L_minus - coeffs.L_minus),
            kind="info",
        )
    )
    entries.append(
        metric_entry(
            "Eq16",
            "L+ factor: printed (cosh + eps/theta) minus sinh-corrected value (logged)",
            lambda: abs(coeffs_paper.L_plus - coeffs.L_plus),
            kind="info",
        )
    )
    if mp is not None:
        entries.append(
            _entry(
                "Eq17",
                "Hermiticity condition residual at the solved root",
                abs(hermiticity_condition_residual(mp, model)),
                1e-12,
            )
        )
    else:
        entries.append(
            _flagged(
                "Eq17",
                "Hermiticity condition residual at the solved root",
                infeasible_reason,
            )
        )
    entries.append(
        metric_entry(
            "Eq18",
            "printed eps(z) closed form minus solved root (the (1-z^2) factors "
            "conflict with z = 2 kappa/eps; logged)",
            lambda: abs(eps_paper_eq18(z, model) - mp.eps_metric),
            kind="info",
        )
    )
    entries.append(
        metric_entry(
            "Eq19",
            "x transform: Theta x Theta^-1 vs printed right-hand side "
            "(printed label says the inverse direction; oracle adjudicates this one)",
            lambda: xp["x_theta_conj"],
            1e-8,
        )
    )
    entries.append(
        metric_entry(
            "Eq20",
            "p transform: Theta p Theta^-1 vs printed right-hand side "
            "(printed left-hand side reads x but denotes p)",
            lambda: xp["p_theta_conj"],
            1e-8,
        )
    )
    entries.append(
        metric_entry(
            "Eq21",
            "h = lambda1 p^2 + lambda2 x^2: least-squares fit residual",
            lambda: lam.fit_residual,
            1e-8,
        )
    )
    entries.append(
        metric_entry(
            "Eq22",
            "lambda1: printed formula minus oracle fit (dimensionally suspect, logged)",
            lambda: abs(lam.lambda1_paper - lam.lambda1_oracle),
            kind="info",
        )
    )
    entries.append(
        metric_entry(
            "Eq23",
            "lambda2: printed formula minus oracle fit (dimensionally suspect, logged)",
            lambda: abs(lam.lambda2_paper - lam.lambda2_oracle),
            kind="info",
        )
    )
    sigma_u_v = _sigma_u_v(z, model)
    entries.append(
        _entry("Eq24", "sigma(z) as printed (value logged)", sigma_u_v[0], kind="info")
    )
    entries.append(
        _entry("Eq25", "U as printed (value logged)", sigma_u_v[1], kind="info")
    )
    entries.append(
        _entry("Eq26", "V as printed (value logged)", sigma_u_v[2], kind="info")
    )
    try:
        e27 = _entry(
            "Eq27",
            "closed-form Theta(z) vs solver Theta (relative interior distance, logged)",
            theta_closed_form_defect(z, model, CERT_DIM),
            kind="info",
        )
    except PseudohermError as exc:
        e27 = _flagged(
            "Eq27",
            "closed-form Theta(z) vs solver Theta (relative interior distance, logged)",
            f"{type(exc).__name__}: {exc}",
        )
    entries.append(e27)
    lam0 = lambda_pair_z0(model)
    entries.append(
        _entry(
            "Eq28",
            "printed z = 0 limit: |4 lambda1 lambda2 - (omega^2 + 4 alpha^2)| "
            "(documented inconsistency with the stated spectrum)",
            abs(4.0 * lam0[0] * lam0[1] - model.spectral_scale**2),
            kind="info",
        )
    )

    # --- position representation block -------------------------------------
    grid = config.grid
    x = grid.xs()
    gf = cosh_pair(config.delta, grid)
    d1 = d1_operator(grid).entries
    a_grid = (sparse.diags(gf.A) @ d1 + sparse.diags(gf.B)).tocsr()
    ad_grid = (-(sparse.diags(gf.A) @ d1) + sparse.diags(gf.B - gf.dA)).tocsr()
    sum_expected = sparse.diags(2.0 * gf.B - gf.dA).tocsr()
    entries.append(
        _entry(
            "Eq29",
            "differential ladder pair: a + a' equals the multiplication operator 2B - A'",
            applied_operator_defect(a_grid + ad_grid, sum_expected, grid),
            1e-10,
        )
    )
    free = build_position_hamiltonian(
        cosh_pair(0.0, grid), ModelParams(model.omega, 0.0), grid
    )
    # with A = cosh x, B = 0, alpha = 0 the printed operator is
    # -om cosh^2 d2 - om sinh 2x d1 /... assembled; check on a cubic where the
    # stencils are exact
    poly = x**3 - 2.0 * x
    expected = (
        -model.omega * gf.A**2 * (6.0 * x)
        - 2.0 * model.omega * gf.A * gf.dA * (3.0 * x * x - 2.0)
        + (model.omega * 0.5) * poly
    )
    m = 16
    entries.append(
        _entry(
            "Eq30",
            "printed differential Hamiltonian: stencil-exact on cubic polynomials "
            "(note: differs from composing the ladder pair by -2 alpha A A' d/dx, logged)",
            float(
                np.linalg.norm((free.apply(poly) - expected)[m:-m])
                / np.linalg.norm(expected[m:-m])
            ),
            1e-9,
        )
    )
    # steep gauge slopes (2 alpha delta / omega) push the stencil error of
    # this check; it converges at 4th order and clears 1e-6 at 8192 points
    fine = Grid(grid.x_min, grid.x_max, max(grid.n_points, 8192))
    entries.append(
        _entry(
            "Eq31",
            "gauge equivalence: rho H rho^-1 vs the symmetric second-order form",
            gauge_equivalence_defect(cosh_pair(config.delta, fine), model, fine),
            1e-6,
        )
    )
    logrho_closed = -(2.0 * model.alpha / model.omega) * config.delta * x
    delta_c = config.delta
    gf_custom = custom_gauge(
        grid,
        np.cosh,
        np.sinh,
        np.cosh,
        lambda s: delta_c * np.cosh(s),
        lambda s: delta_c * np.sinh(s),
    )
    entries.append(
        _entry(
            "Eq32",
            "gauge map rho: 4th-order quadrature vs closed form",
            float(
                np.max(
                    np.abs(log_rho_gauge(gf_custom, model, grid) - logrho_closed)
                )
            ),
            1e-10,
        )
    )
    sym = -model.omega * (d1 @ sparse.diags(gf.A**2) @ d1) + sparse.diags(
        u_eff(gf, model, grid)
    )
    sym_i = sym.toarray()[m:-m, m:-m]
    entries.append(
        _entry(
            "Eq33",
            "symmetric form -omega d/dx A^2 d/dx + U_eff: interior matrix symmetry",
            float(
                np.linalg.norm(sym_i - sym_i.T) / (2.0 * np.linalg.norm(sym_i))
            ),
            1e-12,
        )
    )
    ueff_b0 = u_eff(cosh_pair(0.0, grid), model, grid)
    entries.append(
        _entry(
            "Eq34",
            "U_eff with B = 0, A = cosh x reduces to omega/2 - alpha cosh 2x",
            float(
                np.max(np.abs(ueff_b0 - (model.omega / 2.0 - model.alpha * np.cosh(2.0 * x))))
                / max(1.0, float(np.max(np.abs(ueff_b0))))
            ),
            1e-10,
        )
    )
    entries.append(_chain_entry(model, config.delta))
    v37 = schrodinger_potential(model, config.delta, config.eps_energy, _RM_GRID)
    v_chain = chain_consistent_potential(model, config.delta, config.eps_energy, _RM_GRID)
    entries.append(
        _entry(
            "Eq36",
            "printed reduced potential minus the chain-consistent one "
            "(constant +1, eps vs eps/omega, tanh sign; logged)",
            float(np.max(np.abs(v37.potential - v_chain))),
            kind="info",
        )
    )
    const = config.delta**2 * model.spectral_scale**2 / model.omega**2
    xs_rm = _RM_GRID.xs()
    asym = abs(v37.potential[-1] - (const + 2.0 * config.delta * math.tanh(xs_rm[-1]))) + abs(
        v37.potential[0] - (const + 2.0 * config.delta * math.tanh(xs_rm[0]))
    )
    entries.append(
        _entry(
            "Eq37",
            "Rosen-Morse II potential: asymptotic values const +- 2 delta",
            float(asym),
            1e-6,
        )
    )

    # --- pseudo-supersymmetry block -----------------------------------------
    entries.extend(_susy_entries(config))

    environment = {
        "dim": {"n_levels": config.dim.n_levels, "buffer": config.dim.buffer},
        "certified_metric_block": {
            "n_levels": CERT_DIM.n_levels,
            "buffer": CERT_DIM.buffer,
        },
        "grid": {
            "x_min": grid.x_min,
            "x_max": grid.x_max,
            "n_points": grid.n_points,
        },
        "certificate_grid": {
            "x_min": _RM_GRID.x_min,
            "x_max": _RM_GRID.x_max,
            "n_points": _RM_GRID.n_points,
        },
        "model": {"omega": model.omega, "alpha": model.alpha},
        "z": z,
        "delta": config.delta,
        "eps_energy": config.eps_energy,
        "n": config.n,
        "branch": config.branch,
        "tolerances": {
            "metric_defect": 1e-8,
            "condition_root": 1e-12,
            "intertwiner": 1e-6,
            "ode_certificate": 1e-6,
        },
        "version": __version__,
    }
    report = AuditReport(environment, tuple(entries))
    got = [e.equation_id for e in report.entries]
    if got != list(EQUATION_IDS):
        raise AssertionError(f"audit coverage broken: {got}")
    return report


def _sigma_u_v(z: float, model: ModelParams) -> tuple[float, float, float]:
    om, al = model.omega, model.alpha
    den = z * om - 2.0 * al * (1.0 - z * z)
    if den == 0.0 or z == 0.0:
        return math.nan, math.nan, math.nan
    inner = al * (1.0 - z * z) - z * om
    sigma = z * math.sqrt(inner) / den if inner >= 0.0 else math.nan
    u = om - 4.0 * al * al / den
    sqrt_al = math.sqrt(al) if al >= 0.0 else math.nan
    v = z * om * (1.0 - al) / den + (om / 2.0 - al / z) * sqrt_al * sigma
    return sigma, u, v


def _chain_entry(model: ModelParams, delta: float) -> AuditEntry:
    """Eq35: whole-chain residual for a chain-consistent closed-form state.

    The reduced potential implied by the gauge chain is a real Rosen-Morse
    II well; choosing the energy parameter so that its exact ground state
    exists in closed form gives an end-to-end test of the reduction.
    """
    desc = (
        "gauge chain: H(rho^-1 Phi/A) = eps * (rho^-1 Phi/A) for the exact "
        "ground state of the chain-consistent reduced potential (quantized eps)"
    )
    om, al = model.omega, model.alpha
    c0 = delta**2 * model.spectral_scale**2 / om**2 + 1.0 - 2.0 * al / om
    disc = c0 * c0 - 4.0 * delta * delta
    if disc < 0.0:
        return _flagged("Eq35", desc, "chain potential has no closed-form ground state here")
    a_rm = math.sqrt((c0 + math.sqrt(disc)) / 2.0)
    c1 = a_rm - delta / a_rm
    c2 = a_rm + delta / a_rm
    if min(c1, c2) <= 0.0:
        return _flagged("Eq35", desc, "chain ground state not normalizable here")
    eps_q = om * (a_rm * (a_rm + 1.0) + 0.5) + al
    t = np.tanh(_RM_GRID.xs())
    phi = (1.0 - t) ** (c1 / 2.0) * (1.0 + t) ** (c2 / 2.0)
    residual = gauge_chain_residual(phi, eps_q, model, delta, _RM_GRID)
    return _entry("Eq35", desc, residual, 1e-5)


def _susy_entries(config: RunConfig) -> list[AuditEntry]:
    model = config.model
    entries: list[AuditEntry] = []
    grid = config.grid
    x = grid.xs()
    try:
        sp = susy_params_from_model(model, config.delta, config.eps_energy, "plus")
    except PseudohermError as exc:
        reason = f"{type(exc).__name__}: {exc}"
        descs = {
            "Eq38": "factorization: L-L = H_p (applied residual)",
            "Eq39": "factorization: LL- = H_susy (applied residual)",
            "Eq40": "composite intertwiner relation eta H = H_p' eta (logged)",
            "Eq41": "superpotential boundedness: | |W(x_max)| - sqrt(a^2+b^2) |",
            "Eq42": "real partner potential V = W^2 - W' closed form",
            "Eq43": "real partner potential Vbar = W^2 + W' closed form",
            "Eq44": "coefficient match of the printed a: |a(a+1) - (eps - 1/2 - alpha/omega)|",
            "Eq45": "parameter tie b = delta/a: |a b - delta|",
            "Eq46": "complexified V: imaginary part equals 2 a b tanh x",
            "Eq47": "complexified Vbar: imaginary part equals 2 a b tanh x",
            "Eq48": "printed adjoint potential minus mechanical conjugate (logged)",
            "Eq49": "eta1 intertwining residual (constant term -i b; printed +i b fails, logged)",
            "Eq50": "eta2 relation residual (no first-order eta2 satisfies it exactly; logged)",
            "Eq51": "eta2 grid build: applied to a constant recovers its zeroth-order term",
            "Eq52": "composite eta equals the matrix product eta2 eta1",
            "Eq53": "closed-form level vs Rayleigh quotient of Phi_n",
            "Eq54": "ODE certificate of Phi_n (constant-free potential convention)",
            "Eq55": "c1 + c2 = 2(a - n) (imaginary shift adjudicated to a*b)",
        }
        return [_flagged(eq, d, reason) for eq, d in descs.items()]

    w = superpotential(sp)
    w_real = Superpotential(sp.susy_a, sp.susy_b, complexified=False)
    hp, hs = superpotential_partners(w, grid)
    fact = factorization_defect(w, grid)
    entries.append(_entry("Eq38", "factorization: L-L = H_p (applied residual)", fact[0], 1e-8))
    entries.append(_entry("Eq39", "factorization: LL- = H_susy (applied residual)", fact[1], 1e-8))

    a_s, b_s = sp.susy_a, sp.susy_b
    t = np.tanh(x)
    sech2 = 1.0 / np.cosh(x) ** 2
    v_p = w.value(x) ** 2 - w.derivative(x)
    v_s = w.value(x) ** 2 + w.derivative(x)
    d2 = d2_operator(grid).entries
    hp_dag = GridOperator(grid, (-d2 + sparse.diags(np.conj(v_p))).tocsr())
    eta_comp = build_intertwiner("eta_composite", sp, grid)
    entries.append(
        _entry(
            "Eq40",
            "composite intertwiner relation eta H = H_p' eta (logged)",
            intertwiner_residual(eta_comp, hs, hp_dag, grid),
            kind="info",
        )
    )
    wb = abs(abs(complex(a_s * math.tanh(x[-1]), b_s)) - math.hypot(a_s, b_s))
    entries.append(
        _entry(
            "Eq41",
            "superpotential boundedness: | |W(x_max)| - sqrt(a^2+b^2) |",
            wb,
            1e-6,
        )
    )
    v42 = b_s**2 + a_s**2 - a_s * (a_s + 1.0) * sech2 + 2.0 * a_s * b_s * t
    v43 = b_s**2 + a_s**2 + a_s * (1.0 - a_s) * sech2 + 2.0 * a_s * b_s * t
    entries.append(
        _entry(
            "Eq42",
            "real partner potential V = W^2 - W' closed form",
            float(np.max(np.abs(w_real.value(x) ** 2 - w_real.derivative(x) - v42))),
            1e-9,
        )
    )
    entries.append(
        _entry(
            "Eq43",
            "real partner potential Vbar = W^2 + W' closed form",
            float(np.max(np.abs(w_real.value(x) ** 2 + w_real.derivative(x) - v43))),
            1e-9,
        )
    )
    entries.append(
        _entry(
            "Eq44",
            "coefficient match of the printed a: |a(a+1) - (eps - 1/2 - alpha/omega)| "
            "(a direct matching constructor is provided separately; logged)",
            sp.match_report["sech_coefficient_residual"],
            kind="info",
        )
    )
    entries.append(
        _entry("Eq45", "parameter tie b = delta/a: |a b - delta|", abs(a_s * b_s - sp.delta), 1e-12)
    )
    entries.append(
        _entry(
            "Eq46",
            "complexified V: imaginary part equals 2 a b tanh x",
            float(np.max(np.abs(np.imag(v_p) - 2.0 * a_s * b_s * t))),
            1e-9,
        )
    )
    entries.append(
        _entry(
            "Eq47",
            "complexified Vbar: imaginary part equals 2 a b tanh x",
            float(np.max(np.abs(np.imag(v_s) - 2.0 * a_s * b_s * t))),
            1e-9,
        )
    )
    v48_printed = -(b_s**2) + a_s**2 + a_s * (a_s + 1.0) * sech2 - 2j * a_s * b_s * t
    entries.append(
        _entry(
            "Eq48",
            "printed adjoint potential minus mechanical conjugate (logged)",
            float(np.max(np.abs(v48_printed - np.conj(v_p)))),
            kind="info",
        )
    )
    eta1 = build_intertwiner("eta1", sp, grid)
    entries.append(
        _entry(
            "Eq49",
            "eta1 intertwining residual (constant term -i b; printed +i b fails, logged)",
            intertwiner_residual(eta1, hs, hp, grid),
            1e-6,
        )
    )
    eta2 = build_intertwiner("eta2", sp, grid)
    entries.append(
        _entry(
            "Eq50",
            "eta2 relation residual (no first-order eta2 satisfies it exactly; logged)",
            intertwiner_residual(eta2, hp, hp_dag, grid),
            kind="info",
        )
    )
    ones = np.ones(grid.n_points)
    g_expected = -1j * (a_s + 1.0) / (2.0 * b_s) * sech2
    m = 16
    entries.append(
        _entry(
            "Eq51",
            "eta2 grid build: applied to a constant recovers its zeroth-order term",
            float(np.linalg.norm((eta2.op.apply(ones) - g_expected)[m:-m])),
            1e-10,
        )
    )
    composed = eta2.op.entries @ eta1.op.entries
    diff = eta_comp.op.entries - composed
    entries.append(
        _entry(
            "Eq52",
            "composite eta equals the matrix product eta2 eta1",
            float(np.abs(diff.data).max()) if diff.nnz else 0.0,
            1e-14,
        )
    )

    try:
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            state = rm_wavefunction(sp, config.n, _RM_GRID)
    except PseudohermError as exc:
        reason = f"{type(exc).__name__}: {exc}"
        entries.append(_flagged("Eq53", "closed-form level vs Rayleigh quotient of Phi_n", reason))
        entries.append(
            _flagged("Eq54", "ODE certificate of Phi_n (constant-free potential convention)", reason)
        )
        entries.append(
            _flagged("Eq55", "c1 + c2 = 2(a - n) (imaginary shift adjudicated to a*b)", reason)
        )
        return entries
    xs_rm = _RM_GRID.xs()
    v_sel = _stripped_potentials(sp, xs_rm)[state.potential_side]
    d2_rm = d2_operator(_RM_GRID).entries
    hphi = -d2_rm.dot(state.Phi) + v_sel * state.Phi
    num = np.trapezoid(np.conj(state.Phi) * hphi, xs_rm)
    den = np.trapezoid(np.abs(state.Phi) ** 2, xs_rm)
    rayleigh = float((num / den).real)
    if not state.normalizable:
        entries.append(
            _flagged(
                "Eq53",
                "closed-form level vs Rayleigh quotient of Phi_n",
                f"state n={config.n} not normalizable",
            )
        )
    else:
        entries.append(
            _entry(
                "Eq53",
                "closed-form level vs Rayleigh quotient of Phi_n",
                abs(state.lambda_n - rayleigh),
                1e-4,
            )
        )
    entries.append(
        _entry(
            "Eq54",
            "ODE certificate of Phi_n (constant-free potential convention)",
            state.ode_residual,
            1e-6,
        )
    )
    entries.append(
        _entry(
            "Eq55",
            "c1 + c2 = 2(a - n) (imaginary shift adjudicated to a*b)",
            abs(state.c1n + state.c2n - 2.0 * (sp.susy_a - config.n)),
            1e-12,
        )
    )
    return entries
