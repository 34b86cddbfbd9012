"""Command-line interface.

    weham <command> (<path> | --builtin name[params]) [options]

Commands: validate, cocycle, zeta, split, residual, orbit-check, report.
Every command prints one JSON report to stdout (and, with --out, writes
report.json plus any CSV artifacts into the directory). Exit codes:
0 success, 1 failed check or validation, 2 input error, 3 numerical
failure (blow-up, degenerate or unsupported cocycle).

Reports are deterministic: identical inputs and seed give byte-identical
output. Random sample points come from the splitmix64 generator in
`weham.rng`, never from a platform RNG.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import catalog, flow, rng, splitting
from .action import exactness
from .errors import (DegenerateCocycleError, FlowBlowUpError, LandingToleranceError,
                     ScenarioParseError, ScenarioValidationError, UnsupportedStructureError)
from .scenario import Scenario, load_scenario

FLOW_TOL = 1e-6
FD_TOL = 1e-4


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ScenarioParseError(f"expected comma-separated numbers, got {text!r}") from exc


def _resolve_scenario(args) -> Scenario:
    if args.builtin and args.path:
        raise ScenarioParseError("give either a scenario path or --builtin, not both")
    if args.builtin:
        return catalog.builtin(args.builtin)
    if args.path:
        return load_scenario(args.path)
    raise ScenarioParseError("a scenario path or --builtin is required")


def _frame_vectors(scenario: Scenario, spec) -> list[np.ndarray]:
    """Subspace framing from a flag string, defaults entry, or index list."""
    n = scenario.algebra_dim
    if spec is None:
        spec = scenario.defaults.get("subspace")
        if spec is None:
            raise ScenarioParseError("no subspace given and the scenario has no default")
    if isinstance(spec, str):
        if ";" in spec:
            vecs = [np.array(_parse_floats(part)) for part in spec.split(";") if part.strip()]
        else:
            vecs = [np.eye(n)[int(i)] for i in spec.split(",") if i.strip() != ""]
    else:
        spec = list(spec)
        if spec and isinstance(spec[0], (list, tuple)):
            vecs = [np.array(v, dtype=float) for v in spec]
        else:
            vecs = [np.eye(n)[int(i)] for i in spec]
    for v in vecs:
        if v.shape != (n,):
            raise ScenarioParseError(f"subspace vector has length {len(v)}, expected {n}")
    return vecs


def _sample_constraint(scenario: Scenario):
    spec = scenario.defaults.get("sample_constraint")
    if not spec:
        return None
    return rng.min_norm_constraint(spec["coords"], float(spec["min_norm_sq"]))


def _base_point(scenario: Scenario, override) -> list[float]:
    if override:
        x = _parse_floats(override)
    else:
        x = scenario.defaults.get("base_point", [0.0] * scenario.manifold_dim)
    if len(x) != scenario.manifold_dim:
        raise ScenarioParseError(
            f"point has length {len(x)}, expected {scenario.manifold_dim}")
    return [float(c) for c in x]


def _zeta_vectors(scenario: Scenario, args) -> tuple[list[float], list[float]]:
    n = scenario.algebra_dim
    defaults = scenario.defaults.get("zeta", {})
    u = _parse_floats(args.u) if args.u else defaults.get("u")
    v = _parse_floats(args.v) if args.v else defaults.get("v")
    if u is None or v is None:
        if n < 2:
            raise ScenarioParseError("zeta needs --u and --v for a 1-dimensional algebra")
        u = u if u is not None else [1.0 if k == 0 else 0.0 for k in range(n)]
        v = v if v is not None else [1.0 if k == 1 else 0.0 for k in range(n)]
    if len(u) != n or len(v) != n:
        raise ScenarioParseError(f"--u/--v must have length {n}")
    return list(u), list(v)


# -- command handlers --------------------------------------------------------


def cmd_validate(scenario, args):
    jac = scenario.action.algebra.validate_jacobi()
    pois = scenario.action.poisson.validate()
    act = scenario.action.validate()
    checks = [
        {"name": "lie_algebra_jacobi", "passed": jac.passed, **jac.to_dict()},
        {"name": "poisson_jacobi", "passed": pois.passed, **pois.to_dict()},
        {"name": "action_casimir_defect", "passed": act.passed, **act.to_dict()},
    ]
    max_errors = {
        "lie_algebra_jacobi": jac.max_residual,
        "poisson_jacobi": pois.max_residual,
        "action_casimir_defect": act.max_residual,
    }
    return checks, max_errors, {}, {}


def cmd_cocycle(scenario, args):
    action = scenario.action
    c = action.cocycle()
    ce = c.ce_check(action.algebra)
    ex = exactness(action, c, max_degree=args.deg)
    x0 = _base_point(scenario, args.x)
    kernel = c.kernel_at(x0)
    checks = [
        {"name": "cocycle_casimir_valued", "passed": c.is_casimir_valued(action.poisson)},
        {"name": "ce_closed", "passed": ce.passed, **ce.to_dict()},
    ]
    result = {
        "entries": c.to_json(),
        "exactness": "exact" if ex.exact else "NotExact",
        "exactness_residual": ex.max_residual,
        "kernel_at_base_point": {"point": x0, "basis": _jsonify(kernel.T)},
    }
    if ex.exact:
        result["witness"] = [p.to_json() for p in ex.witness]
    return checks, {"ce_closedness": ce.max_residual}, result, {}


def _zeta_csv(comparison) -> str:
    lines = ["s,zeta_numeric,zeta_series,abs_diff"]
    for s, a, b in zip(comparison.s_values, comparison.numeric, comparison.series_values):
        lines.append(f"{s!r},{a!r},{b!r},{abs(a - b)!r}")
    return "\n".join(lines) + "\n"


def cmd_zeta(scenario, args):
    u, v = _zeta_vectors(scenario, args)
    x0 = _base_point(scenario, args.x)
    step = args.step if args.step else float(scenario.defaults.get("step", flow.DEFAULT_STEP))
    comparison = flow.compare_zeta(scenario.action, u, v, x0, args.smin, args.smax,
                                   args.samples, step=step, jmax=args.jmax)
    checks = [{
        "name": "zeta_series_matches_flow",
        "passed": comparison.max_abs_deviation <= FLOW_TOL,
        "max_abs_deviation": comparison.max_abs_deviation,
        "truncated": comparison.series.truncated,
    }]
    result = {
        "u": u, "v": v, "x": x0,
        "series_coeffs": list(comparison.series.coeffs),
        "truncation_index": comparison.series.truncation_index,
    }
    return checks, {"zeta_deviation": comparison.max_abs_deviation}, result, {
        "zeta.csv": _zeta_csv(comparison)}


def _make_split(scenario, args) -> splitting.SplitConfig:
    vecs = _frame_vectors(scenario, args.subspace)
    ip = scenario.defaults.get("inner_product")
    return splitting.SplitConfig(scenario.action, vecs, ip)


def cmd_split(scenario, args):
    S = _make_split(scenario, args)
    gen = rng.SplitMix64(args.seed)
    points = rng.sample_box(gen, args.samples, scenario.manifold_dim, args.box,
                            constraint=_sample_constraint(scenario))
    report = splitting.split_report(S, points, fd_step=args.fd_step)
    ok = (report.roundtrip_max <= FLOW_TOL and report.landing_max <= FLOW_TOL
          and report.dirac_ok
          and (report.product_max_discrepancy is None
               or report.product_max_discrepancy <= FD_TOL))
    checks = [
        {"name": "split_roundtrip", "passed": report.roundtrip_max <= FLOW_TOL,
         "max_error": report.roundtrip_max},
        {"name": "split_landing", "passed": report.landing_max <= FLOW_TOL,
         "max_error": report.landing_max},
        {"name": "poisson_dirac", "passed": report.dirac_ok},
    ]
    if report.product_max_discrepancy is not None:
        checks.append({"name": "product_structure",
                       "passed": report.product_max_discrepancy <= FD_TOL,
                       "max_error": report.product_max_discrepancy})
    max_errors = {"roundtrip_max": report.roundtrip_max, "landing_max": report.landing_max}
    if report.product_max_discrepancy is not None:
        max_errors["product_max_discrepancy"] = report.product_max_discrepancy
    assert ok == all(c["passed"] for c in checks)
    return checks, max_errors, report.to_dict(), {}


def cmd_residual(scenario, args):
    res = splitting.residual_action(scenario.action,
                                    inner_product=scenario.defaults.get("inner_product"))
    checks = [{"name": "residual_cocycle_zero", "passed": res.residual_cocycle_zero}]
    result = {
        "kernel_basis": _jsonify(res.kernel_basis.T),
        "translational_basis": _jsonify(res.complement_basis.T),
        "residual_hamiltonians": [p.to_json() for p in res.residual_hams],
        "slice_zero_functions": [p.to_json() for p in res.slice_polys],
    }
    return checks, {}, result, {}


def cmd_orbit_check(scenario, args):
    u, v = _zeta_vectors(scenario, args)
    x0 = _base_point(scenario, args.x)
    steps = args.steps if args.steps else max(1, int(round(args.T / flow.DEFAULT_STEP)))
    report = flow.orbit_levelset_check(scenario.action, u, v, x0, args.T, steps,
                                       jmax=args.jmax)
    checks = [{"name": "orbit_levelset", "passed": not report.blew_up, **report.to_dict()}]
    return checks, {}, report.to_dict(), {}


def cmd_report(scenario, args):
    checks, max_errors, result, files = cmd_validate(scenario, args)
    for sub in ("cocycle", "zeta", "split", "residual", "orbit"):
        try:
            if sub == "cocycle":
                c, m, r, f = cmd_cocycle(scenario, args)
            elif sub == "zeta":
                if scenario.defaults.get("zeta") is None and scenario.algebra_dim < 2:
                    continue
                c, m, r, f = cmd_zeta(scenario, args)
            elif sub == "split":
                if scenario.defaults.get("subspace") is None and args.subspace is None:
                    continue
                c, m, r, f = cmd_split(scenario, args)
            elif sub == "residual":
                cmatrix = scenario.action.cocycle()
                if not all(p.is_constant() for p in cmatrix.entries.values()):
                    continue
                c, m, r, f = cmd_residual(scenario, args)
            else:
                struct = scenario.action.algebra.structure_report()
                if not (struct.is_nilpotent and not struct.is_abelian):
                    continue
                c, m, r, f = cmd_orbit_check(scenario, args)
        except (UnsupportedStructureError, DegenerateCocycleError):
            continue
        checks.extend(c)
        max_errors.update(m)
        result[sub] = r
        files.update(f)
    return checks, max_errors, result, files


_HANDLERS = {
    "validate": cmd_validate,
    "cocycle": cmd_cocycle,
    "zeta": cmd_zeta,
    "split": cmd_split,
    "residual": cmd_residual,
    "orbit-check": cmd_orbit_check,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weham",
        description="Weakly Hamiltonian actions: cocycles, flow evaluation, splitting.")
    parser.add_argument("command", choices=sorted(_HANDLERS))
    parser.add_argument("path", nargs="?", help="scenario JSON file")
    parser.add_argument("--builtin", help="builtin scenario name, e.g. 'galilean(2.5)'")
    parser.add_argument("--subspace", help="comma-separated basis indices or ';'-separated vectors")
    parser.add_argument("--u", help="algebra coefficient vector, comma-separated")
    parser.add_argument("--v", help="algebra coefficient vector, comma-separated")
    parser.add_argument("--x", help="manifold point, comma-separated")
    parser.add_argument("--smin", type=float, default=-5.0)
    parser.add_argument("--smax", type=float, default=5.0)
    parser.add_argument("--samples", type=int, default=None,
                        help="grid size for zeta (default 101), sample count for split (default 100)")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--box", type=float, default=2.0, help="sampling box half-width")
    parser.add_argument("--step", type=float, default=None, help="integrator step size")
    parser.add_argument("--fd-step", type=float, default=1e-4, dest="fd_step")
    parser.add_argument("--deg", type=int, default=2, help="degree bound for exactness witnesses")
    parser.add_argument("--jmax", type=int, default=None, help="series order cap")
    parser.add_argument("--T", type=float, default=10.0, help="orbit-check horizon")
    parser.add_argument("--steps", type=int, default=None, help="orbit-check integrator steps")
    parser.add_argument("--out", help="directory for report.json and CSV artifacts")
    parser.add_argument("--format", choices=["json", "csv"], default="json",
                        help="stdout format (csv only affects zeta)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.samples is None:
        args.samples = 101 if args.command in ("zeta", "report") else 100
    try:
        scenario = _resolve_scenario(args)
        checks, max_errors, result, files = _HANDLERS[args.command](scenario, args)
    except ScenarioParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScenarioValidationError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 1
    except (DegenerateCocycleError, FlowBlowUpError, LandingToleranceError,
            UnsupportedStructureError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3

    exit_code = 0 if all(c.get("passed", True) for c in checks) else 1
    report = _jsonify({
        "scenario": scenario.name,
        "command": args.command,
        "checks": checks,
        "max_errors": max_errors,
        "result": result,
        "exit_code": exit_code,
    })
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(text, encoding="utf-8")
        for fname, content in files.items():
            (out / fname).write_text(content, encoding="utf-8")
    if args.command == "zeta" and args.format == "csv":
        sys.stdout.write(files["zeta.csv"])
    else:
        sys.stdout.write(text)
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
