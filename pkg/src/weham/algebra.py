"""Finite-dimensional real Lie algebras given by structure constants.

A bracket table stores [e_i, e_j] only for i < j; the opposite order is
obtained by sign flip, so antisymmetry holds by construction. Indices are
0-based everywhere (a printed table entry like "[e_1,e_3]=e_5" becomes
structure key (0, 2) with a unit in coordinate 4).

The Jacobi identity is a validated property, not an assumption: user
tables go through `validate_jacobi` before they feed Poisson structures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg

JACOBI_TOL = 1e-12


@dataclass(frozen=True)
class JacobiReport:
    passed: bool
    max_residual: float
    offending_triple: tuple[int, int, int] | None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": self.max_residual,
            "offending_triple": list(self.offending_triple) if self.offending_triple else None,
        }


@dataclass(frozen=True)
class StructureReport:
    center: np.ndarray          # columns span the center
    derived: np.ndarray         # columns span [g, g]
    lcs_dims: tuple[int, ...]   # dims of g^1, g^2, ... down to 0 or stabilization
    is_abelian: bool
    is_2step: bool
    is_nilpotent: bool
    nilpotency_class: int | None

    def to_dict(self) -> dict:
        return {
            "center_dim": self.center.shape[1],
            "derived_dim": self.derived.shape[1],
            "lcs_dims": list(self.lcs_dims),
            "is_abelian": self.is_abelian,
            "is_2step": self.is_2step,
            "is_nilpotent": self.is_nilpotent,
            "nilpotency_class": self.nilpotency_class,
        }


class LieAlgebra:
    """Structure-constant Lie algebra on R^n. Immutable once built."""

    def __init__(self, dim: int, structure=None, labels=None):
        dim = int(dim)
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        table = {}
        for (i, j), coords in (structure or {}).items():
            i, j = int(i), int(j)
            if not (0 <= i < j < dim):
                raise ValueError(f"structure key ({i}, {j}) must satisfy 0 <= i < j < dim")
            vec = np.asarray(coords, dtype=float)
            if vec.shape != (dim,):
                raise ValueError(f"bracket coordinates for ({i}, {j}) must have length {dim}")
            if np.any(np.abs(vec) > 0):
                table[(i, j)] = vec.copy()
                table[(i, j)].setflags(write=False)
        self.structure = table
        self.labels = tuple(labels) if labels else None
        if self.labels is not None and len(self.labels) != dim:
            raise ValueError("labels must match dim")

    @classmethod
    def abelian(cls, dim: int, labels=None) -> "LieAlgebra":
        return cls(dim, {}, labels)

    def basis_bracket(self, i: int, j: int) -> np.ndarray:
        """[e_i, e_j] for any index order."""
        if i == j:
            return np.zeros(self.dim)
        if i < j:
            v = self.structure.get((i, j))
            return v.copy() if v is not None else np.zeros(self.dim)
        v = self.structure.get((j, i))
        return -v if v is not None else np.zeros(self.dim)

    def bracket(self, u, v) -> np.ndarray:
        """Bilinear antisymmetric extension of the structure constants."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if u.shape != (self.dim,) or v.shape != (self.dim,):
            raise ValueError(f"coefficient vectors must have length {self.dim}")
        out = np.zeros(self.dim)
        for (i, j), coords in self.structure.items():
            out += (u[i] * v[j] - u[j] * v[i]) * coords
        return out

    def ad_orbit(self, u, v, jmax: int):
        """Iterated right-brackets [u, B_v(u), B_v^2(u), ...] with B_v(w) = [w, v].

        Returns (iterates, truncation_index) where truncation_index is the
        first j with an exactly vanishing iterate, or None if none vanishes
        within jmax.
        """
        if jmax < 0:
            raise ValueError("jmax must be non-negative")
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        iterates = [u.copy()]
        truncation = 0 if np.all(np.abs(u) <= JACOBI_TOL) else None
        for j in range(1, jmax + 1):
            w = self.bracket(iterates[-1], v)
            iterates.append(w)
            if truncation is None and np.all(np.abs(w) <= JACOBI_TOL):
                truncation = j
        return iterates, truncation

    def jacobiator(self, i: int, j: int, k: int) -> np.ndarray:
        ei = np.eye(self.dim)
        return (self.bracket(self.basis_bracket(i, j), ei[k])
                + self.bracket(self.basis_bracket(j, k), ei[i])
                + self.bracket(self.basis_bracket(k, i), ei[j]))

    def validate_jacobi(self, tol: float = JACOBI_TOL) -> JacobiReport:
        """Check the Jacobi identity on every basis triple."""
        worst = 0.0
        offender = None
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    res = float(np.max(np.abs(self.jacobiator(i, j, k))))
                    worst = max(worst, res)
                    if res > tol and offender is None:
                        offender = (i, j, k)
        return JacobiReport(passed=worst <= tol, max_residual=worst, offending_triple=offender)

    def _bracket_span(self, basis: np.ndarray) -> np.ndarray:
        """Column basis of span{[e_i, w] : i < dim, w a column of basis}."""
        cols = []
        eye = np.eye(self.dim)
        for i in range(self.dim):
            for c in range(basis.shape[1]):
                cols.append(self.bracket(eye[i], basis[:, c]))
        if not cols:
            return np.zeros((self.dim, 0))
        return linalg.column_space(np.array(cols).T)

    def structure_report(self) -> StructureReport:
        """Center, derived algebra, lower central series, nilpotency flags."""
        eye = np.eye(self.dim)
        # z in center iff [z, e_j] = 0 for all j; stack the maps z -> [z, e_j]
        rows = []
        for j in range(self.dim):
            M = np.array([self.bracket(eye[i], eye[j]) for i in range(self.dim)]).T
            rows.append(M)
        center = linalg.nullspace(np.vstack(rows)) if rows else np.eye(self.dim)

        brackets = [coords for coords in self.structure.values()]
        if brackets:
            derived = linalg.column_space(np.array(brackets).T)
        else:
            derived = np.zeros((self.dim, 0))

        dims = [self.dim]
        current = eye
        while True:
            nxt = self._bracket_span(current)
            dims.append(nxt.shape[1])
            if nxt.shape[1] == 0 or nxt.shape[1] == current.shape[1]:
                break
            current = nxt
        is_nilpotent = dims[-1] == 0
        nilpotency_class = len(dims) - 1 if is_nilpotent else None
        is_abelian = derived.shape[1] == 0
        is_2step = linalg.span_contains(center, derived)
        return StructureReport(center=center, derived=derived, lcs_dims=tuple(dims),
                               is_abelian=is_abelian, is_2step=is_2step,
                               is_nilpotent=is_nilpotent, nilpotency_class=nilpotency_class)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.structure)})"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        brackets = [
            {"i": i, "j": j, "coords": list(map(float, coords))}
            for (i, j), coords in sorted(self.structure.items())
        ]
        out = {"dim": self.dim, "brackets": brackets}
        if self.labels:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra":
        if not isinstance(data, dict) or "dim" not in data:
            raise ValueError("expected an object with 'dim'")
        dim = int(data["dim"])
        structure = {}
        for k, rec in enumerate(data.get("brackets", [])):
            if not isinstance(rec, dict) or not {"i", "j", "coords"} <= set(rec):
                raise ValueError(f"brackets[{k}]: expected an object with 'i', 'j', 'coords'")
            i, j = int(rec["i"]), int(rec["j"])
            if not (0 <= i < j < dim):
                raise ValueError(f"brackets[{k}]: indices ({i}, {j}) must satisfy 0 <= i < j < dim")
            if (i, j) in structure:
                raise ValueError(f"brackets[{k}]: duplicate pair ({i}, {j})")
            structure[(i, j)] = rec["coords"]
        return cls(dim, structure, data.get("labels"))
