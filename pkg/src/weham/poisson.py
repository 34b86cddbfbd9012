"""Polynomial Poisson structures on R^N.

Conventions used throughout the package:

    {f, g}      = sum_{i,j} pi_ij d_i f d_j g
    (pi# a)_i   = sum_j pi_ij a_j
    X_H         = pi# dH,   so X_H(g) = {g, H}

The bivector matrix stores only entries with i < j; pi_ji = -pi_ij is
implicit, which makes antisymmetry structural. The Jacobi identity for
the bracket is a polynomial identity checked by `validate`, never assumed.
Casimir membership is likewise decided exactly, coefficient by coefficient,
not by sampling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebra
from .errors import ScenarioValidationError
from .poly import COEFF_EPS, Polynomial


@dataclass(frozen=True)
class PoissonReport:
    passed: bool
    max_residual: float
    offending_triple: tuple[int, int, int] | None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": self.max_residual,
            "offending_triple": list(self.offending_triple) if self.offending_triple else None,
        }


class PoissonStructure:
    """Antisymmetric matrix of Polynomials defining a bracket on R^N."""

    def __init__(self, nvars: int, entries=None):
        nvars = int(nvars)
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        table = {}
        for (i, j), p in (entries or {}).items():
            i, j = int(i), int(j)
            if not (0 <= i < j < nvars):
                raise ValueError(f"entry key ({i}, {j}) must satisfy 0 <= i < j < nvars")
            if not isinstance(p, Polynomial):
                raise TypeError("entries must be Polynomials")
            if p.nvars != nvars:
                raise ValueError(f"entry ({i}, {j}) has {p.nvars} variables, expected {nvars}")
            if not p.is_zero():
                table[(i, j)] = p
        self.entries = table

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant_symplectic(cls, pairs: int) -> "PoissonStructure":
        """Standard structure on R^{2d} in coordinates (q_1..q_d, p_1..p_d).

        {q_i, p_i} = 1 and all other basic brackets vanish.
        """
        d = int(pairs)
        if d < 1:
            raise ValueError("pairs must be at least 1")
        n = 2 * d
        one = Polynomial.constant(n, 1.0)
        return cls(n, {(i, d + i): one for i in range(d)})

    @classmethod
    def lie_poisson(cls, L: LieAlgebra) -> "PoissonStructure":
        """Linear structure on the dual: {x_i, x_j} = <x, [e_i, e_j]>."""
        report = L.validate_jacobi()
        if not report.passed:
            raise ScenarioValidationError(
                f"Lie algebra fails the Jacobi identity at triple {report.offending_triple} "
                f"(residual {report.max_residual:.3e})")
        n = L.dim
        entries = {}
        for (i, j), coords in L.structure.items():
            entries[(i, j)] = Polynomial(n, {
                tuple(1 if m == k else 0 for m in range(n)): coords[k]
                for k in range(n) if coords[k] != 0.0
            })
        return cls(n, entries)

    @classmethod
    def product(cls, P1: "PoissonStructure", P2: "PoissonStructure") -> "PoissonStructure":
        """Block-diagonal structure on R^{N1+N2}, no cross terms."""
        n = P1.nvars + P2.nvars
        entries = {}
        for (i, j), p in P1.entries.items():
            entries[(i, j)] = p.embed(n, 0)
        for (i, j), p in P2.entries.items():
            entries[(P1.nvars + i, P1.nvars + j)] = p.embed(n, P1.nvars)
        return cls(n, entries)

    # -- bracket machinery ---------------------------------------------------

    def entry(self, i: int, j: int) -> Polynomial:
        """pi_ij for any index order (pi_ji = -pi_ij, pi_ii = 0)."""
        if i == j:
            return Polynomial.zero(self.nvars)
        if i < j:
            p = self.entries.get((i, j))
            return p if p is not None else Polynomial.zero(self.nvars)
        p = self.entries.get((j, i))
        return -p if p is not None else Polynomial.zero(self.nvars)

    def bracket(self, f: Polynomial, g: Polynomial) -> Polynomial:
        if f.nvars != self.nvars or g.nvars != self.nvars:
            raise ValueError("polynomial variable count does not match the structure")
        out = Polynomial.zero(self.nvars)
        for (i, j), p in self.entries.items():
            out = out + p * (f.differentiate(i) * g.differentiate(j)
                             - f.differentiate(j) * g.differentiate(i))
        return out

    def hamiltonian_vf(self, H: Polynomial) -> list[Polynomial]:
        """Components of X_H: component i is {x_i, H} = sum_j pi_ij d_j H."""
        if H.nvars != self.nvars:
            raise ValueError("polynomial variable count does not match the structure")
        comps = [Polynomial.zero(self.nvars) for _ in range(self.nvars)]
        for (i, j), p in self.entries.items():
            comps[i] = comps[i] + p * H.differentiate(j)
            comps[j] = comps[j] - p * H.differentiate(i)
        return comps

    def is_casimir(self, f: Polynomial, tol: float = COEFF_EPS) -> bool:
        """Exact test: X_f vanishes identically as a polynomial vector field."""
        return all(c.is_zero(tol) for c in self.hamiltonian_vf(f))

    def matrix_at(self, x) -> np.ndarray:
        """Dense antisymmetric matrix of entry values at a point."""
        M = np.zeros((self.nvars, self.nvars))
        for (i, j), p in self.entries.items():
            v = p.evaluate(x)
            M[i, j] = v
            M[j, i] = -v
        return M

    def validate(self, tol: float = COEFF_EPS) -> PoissonReport:
        """Check the Jacobi identity {{x_i,x_j},x_k} + cyclic = 0 identically."""
        worst = 0.0
        offender = None
        xs = [Polynomial.coordinate(self.nvars, k) for k in range(self.nvars)]
        for i in range(self.nvars):
            for j in range(i + 1, self.nvars):
                for k in range(j + 1, self.nvars):
                    s = (self.bracket(self.entry(i, j), xs[k])
                         + self.bracket(self.entry(j, k), xs[i])
                         + self.bracket(self.entry(k, i), xs[j]))
                    res = s.max_abs_coeff()
                    worst = max(worst, res)
                    if res > tol and offender is None:
                        offender = (i, j, k)
        return PoissonReport(passed=worst <= tol, max_residual=worst, offending_triple=offender)

    def __repr__(self):
        return f"PoissonStructure(nvars={self.nvars}, entries={len(self.entries)})"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "type": "matrix",
            "entries": [
                {"i": i, "j": j, "poly": p.to_json()}
                for (i, j), p in sorted(self.entries.items())
            ],
        }
