"""Command-line front end.

Subcommands: ``audit``, ``spectrum``, ``metric solve|verify``,
``rm spectrum|density|intertwine``, ``figures``.  Scientific "flag"
outcomes (an infeasible metric, a non-normalizable state) are data and
exit 0; only invalid input or internal failure exits nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from .audit import RunConfig, run_audit
from .exceptions import NoRealMetricError, PseudohermError
from .fock import FockDim, ModelParams, build_hamiltonian, eigenvalues
from .gridops import Grid
from .io import atomic_write_text, format_float, write_csv
from .metric import eps_paper_eq18, hermiticity_condition_residual, solve_eps, solve_metric
from .rosenmorse import (
    build_intertwiner,
    density_profile,
    factorization_defect,
    intertwiner_residual,
    rm_spectrum,
    rm_wavefunction,
    superpotential,
    superpotential_partners,
    susy_params_from_model,
)

#: figure-data parameter sets (alpha, n, omega, delta, eps_energy)
FIGURE_PARAMS = (
    ("fig1", 2.0, 1, 3.0, 10.0, 5.0),
    ("fig2", 2.0, 2, 3.0, 10.0, 4.0),
    ("fig3", 2.0, 8, 3.0, 10.0, 4.0),
)

_SWEEP_Z = [round(0.3 + 0.1 * k, 10) for k in range(28)]


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=str, default=None, help="JSON config file")
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--buffer", type=int, default=None)
    p.add_argument("--grid-min", type=float, default=None)
    p.add_argument("--grid-max", type=float, default=None)
    p.add_argument("--grid-n", type=int, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--eps-energy", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--branch", type=str, choices=["plus", "minus"], default=None)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", type=str, choices=["json", "csv"], default=None)


_DEFAULTS = {
    "omega": 3.0,
    "alpha": 1.0,
    "z": 1.0,
    "dim": 128,
    "buffer": 8,
    "grid_min": -12.0,
    "grid_max": 12.0,
    "grid_n": 2048,
    "delta": 10.0,
    "eps_energy": 5.0,
    "n": 1,
    "branch": "plus",
    "out": None,
    "format": "json",
}


def _resolve(args: argparse.Namespace) -> dict:
    values = dict(_DEFAULTS)
    if args.config:
        with open(args.config) as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(values)
        if unknown:
            raise PseudohermError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    for key in values:
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            values[key] = cli_val
    return values


def _run_config(v: dict) -> RunConfig:
    return RunConfig(
        model=ModelParams(v["omega"], v["alpha"]),
        z=v["z"],
        dim=FockDim(v["dim"], v["buffer"]),
        grid=Grid(v["grid_min"], v["grid_max"], v["grid_n"]),
        delta=v["delta"],
        eps_energy=v["eps_energy"],
        n=v["n"],
        branch=v["branch"],
        out=v["out"],
        format=v["format"],
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write_text(out, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_audit(v: dict) -> int:
    report = run_audit(_run_config(v))
    _emit(report.to_json(), v["out"])
    return 0


def cmd_spectrum(v: dict) -> int:
    params = ModelParams(v["omega"], v["alpha"])
    dim = FockDim(v["dim"], v["buffer"])
    count = v["n"] if v["n"] and v["n"] > 1 else 8
    spec = eigenvalues(build_hamiltonian(params, dim))
    levels = np.arange(count)
    exact = (levels + 0.5) * params.spectral_scale
    numeric = spec.eigenvalues.real[:count]
    write_csv(
        v["out"] or "spectrum.csv",
        ["n", "E_exact", "E_numeric", "abs_err"],
        [levels, exact, numeric, np.abs(numeric - exact)],
        comments=[
            f"omega={format_float(params.omega)} alpha={format_float(params.alpha)} "
            f"dim={dim.n_levels} max_residual={format_float(spec.max_residual)}"
        ],
    ) if v["out"] else _emit(
        "\n".join(
            ["n,E_exact,E_numeric,abs_err"]
            + [
                f"{k},{format_float(exact[k])},{format_float(numeric[k])},"
                f"{format_float(abs(numeric[k] - exact[k]))}"
                for k in levels
            ]
        ),
        None,
    )
    return 0


def cmd_metric(v: dict, action: str) -> int:
    params = ModelParams(v["omega"], v["alpha"])
    try:
        if action == "solve":
            mp = solve_eps(v["z"], params, branch=v["branch"])
            payload = {
                "feasible": True,
                "eps_metric": mp.eps_metric,
                "kappa": mp.kappa,
                "theta": mp.theta,
                "z": mp.z,
                "branch": v["branch"],
                "condition_residual": abs(hermiticity_condition_residual(mp, params)),
                "eps_paper_eq18": eps_paper_eq18(v["z"], params, v["branch"]),
            }
        else:
            sol = solve_metric(v["z"], params, branch=v["branch"])
            eta_h = (sol.eta.entries + sol.eta.entries.conj().T) / 2.0
            payload = {
                "feasible": True,
                "eps_metric": sol.params.eps_metric,
                "kappa": sol.params.kappa,
                "defects": sol.defects,
                "eta_min_eigenvalue": float(np.linalg.eigvalsh(eta_h).min()),
            }
    except NoRealMetricError as exc:
        payload = {"feasible": False, "reason": str(exc)}
    _emit(_json_text(payload), v["out"])
    return 0


def _json_text(payload: dict) -> str:
    def conv(x):
        if isinstance(x, dict):
            return {k: conv(val) for k, val in x.items()}
        if isinstance(x, float):
            return float(format_float(x)) if x == x else None
        return x

    return json.dumps(conv(payload), indent=2)


def cmd_rm(v: dict, action: str) -> int:
    params = ModelParams(v["omega"], v["alpha"])
    grid = Grid(v["grid_min"], v["grid_max"], v["grid_n"])
    sp = susy_params_from_model(params, v["delta"], v["eps_energy"], v["branch"])
    if action == "spectrum":
        count = max(v["n"], 1)
        rows_n, rows_l, rows_flag = [], [], []
        for k in range(count):
            if sp.susy_a == k:
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                rows_l.append(rm_spectrum(sp, k))
            rows_n.append(k)
            rows_flag.append("true" if k < sp.susy_a else "false")
        header = [
            f"omega={format_float(params.omega)} alpha={format_float(params.alpha)} "
            f"delta={format_float(v['delta'])} eps_energy={format_float(v['eps_energy'])} "
            f"susy_a={format_float(sp.susy_a)} susy_b={format_float(sp.susy_b)}"
        ]
        out = v["out"] or "rm_spectrum.csv"
        write_csv(out, ["n", "lambda_n", "normalizable"],
                  [np.array(rows_n), np.array(rows_l), np.array(rows_flag)], header)
        print(out)
        return 0
    if action == "density":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            state = rm_wavefunction(sp, v["n"], grid)
        out = v["out"] or f"density_n{v['n']}.csv"
        _write_density_csv(out, state, sp, params, grid)
        print(out)
        return 0
    # intertwine
    w = superpotential(sp)
    hp, hs = superpotential_partners(w, grid)
    fact = factorization_defect(w, grid)
    eta1 = build_intertwiner("eta1", sp, grid)
    rows = [
        ("factorization_Hp", fact[0]),
        ("factorization_Hsusy", fact[1]),
        ("eta1_intertwining", intertwiner_residual(eta1, hs, hp, grid)),
    ]
    if sp.susy_b != 0.0:
        from .gridops import GridOperator, d2_operator
        from scipy import sparse

        d2 = d2_operator(grid).entries
        x = grid.xs()
        v_p = w.value(x) ** 2 - w.derivative(x)
        hp_dag = GridOperator(grid, (-d2 + sparse.diags(np.conj(v_p))).tocsr())
        eta2 = build_intertwiner("eta2", sp, grid)
        eta = build_intertwiner("eta_composite", sp, grid)
        rows.append(("eta2_relation", intertwiner_residual(eta2, hp, hp_dag, grid)))
        rows.append(("eta_composite_relation", intertwiner_residual(eta, hs, hp_dag, grid)))
    text = "relation,residual\n" + "\n".join(f"{k},{format_float(r)}" for k, r in rows)
    _emit(text, v["out"])
    return 0


def _write_density_csv(path, state, sp, params, grid) -> None:
    dens = density_profile(state, grid)
    comments = [
        f"omega={format_float(params.omega)} alpha={format_float(params.alpha)} "
        f"delta={format_float(sp.delta)} eps_energy={format_float(sp.eps_energy)} "
        f"n={state.n} susy_a={format_float(sp.susy_a)} susy_b={format_float(sp.susy_b)}",
        f"normalizable={'true' if state.normalizable else 'false'} "
        f"lambda_n={format_float(state.lambda_n)} ode_residual={format_float(state.ode_residual)}",
    ]
    if not state.normalizable:
        comments.append("warning=state is not normalizable (Re c1 or Re c2 <= 0); density unnormalized")
    write_csv(
        path,
        ["x", "re_phi", "im_phi", "density"],
        [grid.xs(), state.Phi.real, state.Phi.imag, dens],
        comments,
    )


def cmd_figures(v: dict) -> int:
    import os

    out_dir = v["out"] or "."
    os.makedirs(out_dir, exist_ok=True)
    manifest = []
    for name, alpha, n, omega, delta, eps_energy in FIGURE_PARAMS:
        params = ModelParams(omega, alpha)
        grid = Grid(v["grid_min"], v["grid_max"], v["grid_n"])
        sp = susy_params_from_model(params, delta, eps_energy, "plus")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            state = rm_wavefunction(sp, n, grid)
        path = os.path.join(out_dir, f"{name}.csv")
        _write_density_csv(path, state, sp, params, grid)
        manifest.append(path)
    # eps(z) sweep for the metric solver; infeasible points become gaps
    zs, vals = [], []
    params = ModelParams(v["omega"], v["alpha"])
    for z in _SWEEP_Z:
        zs.append(z)
        try:
            mp = solve_eps(z, params, verify=False)
            vals.append(format_float(mp.eps_metric))
        except NoRealMetricError:
            vals.append("")
    path = os.path.join(out_dir, "sweep.csv")
    lines = [
        f"# eps(z) sweep omega={format_float(params.omega)} alpha={format_float(params.alpha)}",
        "z,value",
    ]
    lines += [f"{format_float(z)},{val}" for z, val in zip(zs, vals)]
    atomic_write_text(path, "\n".join(lines) + "\n")
    manifest.append(path)
    for p in manifest:
        print(p)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudoherm",
        description="Metric-operator and pseudo-supersymmetry verification workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("audit", "spectrum", "figures"):
        _add_common(sub.add_parser(name))
    pm = sub.add_parser("metric")
    pm.add_argument("action", choices=["solve", "verify"])
    _add_common(pm)
    pr = sub.add_parser("rm")
    pr.add_argument("action", choices=["spectrum", "density", "intertwine"])
    _add_common(pr)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        v = _resolve(args)
        if args.command == "audit":
            return cmd_audit(v)
        if args.command == "spectrum":
            return cmd_spectrum(v)
        if args.command == "metric":
            return cmd_metric(v, args.action)
        if args.command == "rm":
            return cmd_rm(v, args.action)
        if args.command == "figures":
            return cmd_figures(v)
        parser.error(f"unknown command {args.command}")
    except PseudohermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
