"""Scenario files: one JSON document bundling a manifold, an algebra,
and an action, plus optional defaults for the command-line checks.

Schema (all indices 0-based):

    {
      "name": "...",
      "manifold_dim": N,
      "lie_algebra": {"dim": n, "brackets": [{"i", "j", "coords"}], "labels": [...]},
      "poisson": {"type": "constant_symplectic", "pairs": d}
               | {"type": "lie_poisson", "lie_algebra": {...}}   # omit to reuse the acting algebra
               | {"type": "matrix", "entries": [{"i", "j", "poly"}]},
      "action": {"hamiltonians": [ [ {"coeff", "exp"}, ... ], ... ]},
      "defaults": {"subspace": [...], "inner_product": [[...]], "base_point": [...],
                   "step": 1e-3, "box": 2.0,
                   "sample_constraint": {"coords": [...], "min_norm_sq": r},
                   "zeta": {"u": [...], "v": [...]},
                   "tolerances": {...}}
    }

Loading is eager: the Jacobi identity, the Poisson identity and the
Casimir-valuedness of the action are all verified before a Scenario is
handed out. Schema problems raise ScenarioParseError (CLI exit 2), failed
mathematical checks raise ScenarioValidationError (CLI exit 1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .action import WHAction
from .algebra import LieAlgebra
from .errors import ScenarioParseError, ScenarioValidationError
from .poisson import PoissonStructure
from .poly import Polynomial


@dataclass
class Scenario:
    name: str
    action: WHAction
    defaults: dict = field(default_factory=dict)

    @property
    def manifold_dim(self) -> int:
        return self.action.poisson.nvars

    @property
    def algebra_dim(self) -> int:
        return self.action.algebra.dim


def _parse_algebra(data, where: str) -> LieAlgebra:
    try:
        return LieAlgebra.from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise ScenarioParseError(f"{where}: {exc}") from exc


def _parse_poisson(data, nvars: int, acting: LieAlgebra) -> PoissonStructure:
    if not isinstance(data, dict) or "type" not in data:
        raise ScenarioParseError("poisson: expected an object with a 'type' field")
    kind = data["type"]
    if kind == "constant_symplectic":
        d = int(data.get("pairs", 0))
        if d < 1:
            raise ScenarioParseError("poisson.pairs: must be a positive integer")
        if 2 * d != nvars:
            raise ScenarioParseError(
                f"poisson.pairs: 2*{d} does not match manifold_dim {nvars}")
        return PoissonStructure.constant_symplectic(d)
    if kind == "lie_poisson":
        L = _parse_algebra(data["lie_algebra"], "poisson.lie_algebra") \
            if "lie_algebra" in data else acting
        if L.dim != nvars:
            raise ScenarioParseError(
                f"poisson: Lie-Poisson dimension {L.dim} does not match manifold_dim {nvars}")
        return PoissonStructure.lie_poisson(L)
    if kind == "matrix":
        entries = {}
        for k, rec in enumerate(data.get("entries", [])):
            loc = f"poisson.entries[{k}]"
            if not isinstance(rec, dict) or not {"i", "j", "poly"} <= set(rec):
                raise ScenarioParseError(f"{loc}: expected an object with 'i', 'j', 'poly'")
            i, j = int(rec["i"]), int(rec["j"])
            if not (0 <= i < j < nvars):
                raise ScenarioParseError(
                    f"{loc}: indices ({i}, {j}) must satisfy 0 <= i < j < {nvars}; "
                    "only the upper triangle is stored (antisymmetry is implicit)")
            if (i, j) in entries:
                raise ScenarioParseError(f"{loc}: duplicate pair ({i}, {j})")
            try:
                entries[(i, j)] = Polynomial.from_json(rec["poly"], nvars)
            except ValueError as exc:
                raise ScenarioParseError(f"{loc}.poly: {exc}") from exc
        return PoissonStructure(nvars, entries)
    raise ScenarioParseError(f"poisson.type: unknown type {kind!r}")


def scenario_from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioParseError("scenario: expected a JSON object")
    for key in ("name", "manifold_dim", "lie_algebra", "poisson", "action"):
        if key not in data:
            raise ScenarioParseError(f"scenario: missing required field {key!r}")
    nvars = int(data["manifold_dim"])
    if nvars < 1:
        raise ScenarioParseError("manifold_dim: must be positive")
    algebra = _parse_algebra(data["lie_algebra"], "lie_algebra")
    poisson = _parse_poisson(data["poisson"], nvars, algebra)
    adata = data["action"]
    if not isinstance(adata, dict) or "hamiltonians" not in adata:
        raise ScenarioParseError("action: expected an object with 'hamiltonians'")
    hams = []
    for k, hdata in enumerate(adata["hamiltonians"]):
        try:
            hams.append(Polynomial.from_json(hdata, nvars))
        except ValueError as exc:
            raise ScenarioParseError(f"action.hamiltonians[{k}]: {exc}") from exc
    if len(hams) != algebra.dim:
        raise ScenarioParseError(
            f"action: expected {algebra.dim} Hamiltonians, got {len(hams)}")

    action = WHAction(algebra, poisson, hams)
    scenario = Scenario(name=str(data["name"]), action=action,
                        defaults=dict(data.get("defaults", {})))
    _validate_scenario(scenario)
    return scenario


def _validate_scenario(s: Scenario) -> None:
    jac = s.action.algebra.validate_jacobi()
    if not jac.passed:
        raise ScenarioValidationError(
            f"lie_algebra: Jacobi identity fails at triple {jac.offending_triple} "
            f"(residual {jac.max_residual:.3e})")
    pois = s.action.poisson.validate()
    if not pois.passed:
        raise ScenarioValidationError(
            f"poisson: Jacobi identity fails at coordinate triple {pois.offending_triple} "
            f"(residual {pois.max_residual:.3e})")
    act = s.action.validate()
    if not act.passed:
        raise ScenarioValidationError(
            f"action: bracket defect at pair {act.offending_pair} is not a Casimir "
            f"(residual {act.max_residual:.3e})")


def load_scenario(path) -> Scenario:
    """Read, parse and fully validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ScenarioParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{path}: invalid JSON ({exc})") from exc
    return scenario_from_dict(data)


def scenario_to_dict(s: Scenario) -> dict:
    data = {
        "name": s.name,
        "manifold_dim": s.manifold_dim,
        "lie_algebra": s.action.algebra.to_json(),
        "poisson": s.action.poisson.to_json(),
        "action": {"hamiltonians": [H.to_json() for H in s.action.hams]},
    }
    if s.defaults:
        data["defaults"] = s.defaults
    return data


def save_scenario(s: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(s), fh, indent=2, sort_keys=True)
        fh.write("\n")
