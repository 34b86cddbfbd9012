"""Weakly Hamiltonian actions and their obstruction cocycles.

An action assigns one polynomial Hamiltonian to each basis vector of a
Lie algebra acting on a Poisson manifold; H_u extends linearly. The
defect from the assignment being a Lie algebra morphism is the cocycle

    c(u, v) = {H_u, H_v} - H_[u,v]

whose entries must be Casimirs for the action to be valid (that is
exactly the condition that the fundamental vector fields close under
commutator the way the algebra prescribes).

Sign conventions for the Chevalley-Eilenberg differential, fixed once
for the whole package:

    (d0 b)(u, v)    = -b([u, v])            for b: g -> Cas(M)
    (d1 c)(u, v, w) = -c([u,v], w) - c([v,w], u) - c([w,u], v)

`exactness` looks for b with c = d0 b, i.e. c(u, v) = -b([u, v]). A
witness yields the morphism lift H_u - b(u), whose cocycle vanishes;
shifting a lift by +b instead transforms the cocycle as
c |-> c - b([.,.]) (direct expansion, since Casimirs bracket to zero).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import LieAlgebra
from .errors import ScenarioValidationError
from .poisson import PoissonStructure
from .poly import COEFF_EPS, Polynomial


@dataclass(frozen=True)
class ActionReport:
    passed: bool
    max_residual: float
    offending_pair: tuple[int, int] | None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": self.max_residual,
            "offending_pair": list(self.offending_pair) if self.offending_pair else None,
        }


@dataclass(frozen=True)
class CEReport:
    passed: bool
    max_residual: float
    offending_triple: tuple[int, int, int] | None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": self.max_residual,
            "offending_triple": list(self.offending_triple) if self.offending_triple else None,
        }


class CocycleMatrix:
    """Antisymmetric n x n matrix of Casimir-valued Polynomials."""

    def __init__(self, n: int, nvars: int, entries=None):
        self.n = int(n)
        self.nvars = int(nvars)
        table = {}
        for (i, j), p in (entries or {}).items():
            i, j = int(i), int(j)
            if not (0 <= i < j < self.n):
                raise ValueError(f"cocycle key ({i}, {j}) must satisfy 0 <= i < j < n")
            if p.nvars != self.nvars:
                raise ValueError("cocycle entry has the wrong number of variables")
            if not p.is_zero():
                table[(i, j)] = p
        self.entries = table

    def entry(self, i: int, j: int) -> Polynomial:
        if i == j:
            return Polynomial.zero(self.nvars)
        if i < j:
            p = self.entries.get((i, j))
            return p if p is not None else Polynomial.zero(self.nvars)
        p = self.entries.get((j, i))
        return -p if p is not None else Polynomial.zero(self.nvars)

    def value(self, u, v) -> Polynomial:
        """Bilinear extension c(u, v)."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        out = Polynomial.zero(self.nvars)
        for (i, j), p in self.entries.items():
            s = u[i] * v[j] - u[j] * v[i]
            if s != 0.0:
                out = out + p.scale(s)
        return out

    def evaluate_at(self, x) -> np.ndarray:
        """Real antisymmetric matrix [c_ij(x)]."""
        M = np.zeros((self.n, self.n))
        for (i, j), p in self.entries.items():
            val = p.evaluate(x)
            M[i, j] = val
            M[j, i] = -val
        return M

    def is_zero(self, tol: float = COEFF_EPS) -> bool:
        return all(p.is_zero(tol) for p in self.entries.values())

    def is_casimir_valued(self, P: PoissonStructure, tol: float = COEFF_EPS) -> bool:
        return all(P.is_casimir(p, tol) for p in self.entries.values())

    def ce_check(self, L: LieAlgebra, tol: float = COEFF_EPS) -> CEReport:
        """Closedness in the Chevalley-Eilenberg complex: d1 c = 0 identically."""
        if L.dim != self.n:
            raise ValueError("algebra dimension does not match the cocycle")
        worst = 0.0
        offender = None
        eye = np.eye(self.n)
        for i, j, k in itertools.combinations(range(self.n), 3):
            s = (self.value(L.basis_bracket(i, j), eye[k])
                 + self.value(L.basis_bracket(j, k), eye[i])
                 + self.value(L.basis_bracket(k, i), eye[j]))
            res = s.max_abs_coeff()
            worst = max(worst, res)
            if res > tol and offender is None:
                offender = (i, j, k)
        return CEReport(passed=worst <= tol, max_residual=worst, offending_triple=offender)

    def kernel_at(self, x, rtol: float = linalg.RANK_RTOL) -> np.ndarray:
        """Basis (columns) of ker c(x) inside the algebra."""
        return linalg.nullspace(self.evaluate_at(x), rtol)

    def to_json(self) -> list:
        return [{"i": i, "j": j, "poly": p.to_json()} for (i, j), p in sorted(self.entries.items())]


class WHAction:
    """A Lie algebra acting by Hamiltonian vector fields, one H per basis vector."""

    def __init__(self, algebra: LieAlgebra, poisson: PoissonStructure, hams):
        hams = tuple(hams)
        if len(hams) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} Hamiltonians, got {len(hams)}")
        for k, H in enumerate(hams):
            if not isinstance(H, Polynomial):
                raise TypeError(f"Hamiltonian {k} is not a Polynomial")
            if H.nvars != poisson.nvars:
                raise ValueError(f"Hamiltonian {k} has {H.nvars} variables, expected {poisson.nvars}")
        self.algebra = algebra
        self.poisson = poisson
        self.hams = hams
        self._cocycle_cache = None

    def hamiltonian_of(self, u) -> Polynomial:
        """H_u for a coefficient vector u, by linearity."""
        u = np.asarray(u, dtype=float)
        if u.shape != (self.algebra.dim,):
            raise ValueError(f"coefficient vector must have length {self.algebra.dim}")
        out = Polynomial.zero(self.poisson.nvars)
        for k, coeff in enumerate(u):
            if coeff != 0.0:
                out = out + self.hams[k].scale(coeff)
        return out

    def _raw_cocycle_entry(self, i: int, j: int) -> Polynomial:
        lhs = self.poisson.bracket(self.hams[i], self.hams[j])
        return lhs - self.hamiltonian_of(self.algebra.basis_bracket(i, j))

    def validate(self, tol: float = COEFF_EPS) -> ActionReport:
        """Pass iff every {H_i, H_j} - H_[e_i,e_j] is a Casimir."""
        worst = 0.0
        offender = None
        for i in range(self.algebra.dim):
            for j in range(i + 1, self.algebra.dim):
                residual_field = self.poisson.hamiltonian_vf(self._raw_cocycle_entry(i, j))
                res = max(c.max_abs_coeff() for c in residual_field) if residual_field else 0.0
                worst = max(worst, res)
                if res > tol and offender is None:
                    offender = (i, j)
        return ActionReport(passed=worst <= tol, max_residual=worst, offending_pair=offender)

    def cocycle(self) -> CocycleMatrix:
        """The obstruction 2-cocycle; raises if the action is invalid."""
        if self._cocycle_cache is None:
            report = self.validate()
            if not report.passed:
                raise ScenarioValidationError(
                    f"action is not weakly Hamiltonian: bracket defect at pair "
                    f"{report.offending_pair} is not a Casimir "
                    f"(residual {report.max_residual:.3e})")
            n = self.algebra.dim
            entries = {}
            for i in range(n):
                for j in range(i + 1, n):
                    entries[(i, j)] = self._raw_cocycle_entry(i, j)
            self._cocycle_cache = CocycleMatrix(n, self.poisson.nvars, entries)
        return self._cocycle_cache

    def shift(self, b) -> "WHAction":
        """New action with H_i' = H_i + b_i for Casimir polynomials b_i.

        The cocycle transforms as c(u, v) |-> c(u, v) - b([u, v]).
        """
        b = list(b)
        if len(b) != self.algebra.dim:
            raise ValueError("shift must supply one polynomial per basis vector")
        for k, p in enumerate(b):
            if not self.poisson.is_casimir(p):
                raise ScenarioValidationError(f"shift entry {k} is not a Casimir")
        return WHAction(self.algebra, self.poisson,
                        [H + p for H, p in zip(self.hams, b)])

    def __repr__(self):
        return (f"WHAction(dim={self.algebra.dim}, nvars={self.poisson.nvars})")


@dataclass(frozen=True)
class ExactnessResult:
    """Outcome of the coboundary search.

    `witness` solves c(u, v) = -b([u, v]) restricted to polynomials of
    degree <= the requested bound; `morphism_action` is the corrected
    lift H - b whose cocycle vanishes identically (validated), present
    only when the cocycle is exact.
    """
    exact: bool
    max_residual: float
    witness: tuple[Polynomial, ...] | None
    morphism_action: WHAction | None

    def to_dict(self) -> dict:
        out = {"exact": self.exact, "max_residual": self.max_residual}
        if self.witness is not None:
            out["witness"] = [p.to_json() for p in self.witness]
        return out


def _monomials_up_to(nvars: int, degree: int):
    if nvars == 0:
        return [()]
    out = []

    def rec(prefix, remaining):
        if len(prefix) == nvars:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    rec([], degree)
    return sorted(out, key=lambda e: (sum(e), e))


def exactness(A: WHAction, c: CocycleMatrix | None = None, max_degree: int = 2,
              tol: float = 1e-9) -> ExactnessResult:
    """Decide whether the cocycle is a coboundary of bounded polynomial degree.

    Solves the linear system c(e_i, e_j) = -b([e_i, e_j]) for a linear map
    b: g -> polynomials of degree <= max_degree, coefficient by coefficient.
    For an abelian algebra the right side is identically zero, so any
    nonzero cocycle is immediately not exact.
    """
    if c is None:
        c = A.cocycle()
    n = A.algebra.dim
    nvars = A.poisson.nvars
    monos = _monomials_up_to(nvars, max_degree)
    allowed = set(monos)
    col = {(k, m): k * len(monos) + idx for k in range(n) for idx, m in enumerate(monos)}

    rows = []
    rhs = []
    extra_residual = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            target = c.entry(i, j)
            w = A.algebra.basis_bracket(i, j)
            support = set(target.terms) | allowed
            for m in sorted(support, key=lambda e: (sum(e), e)):
                t = target.terms.get(m, 0.0)
                if m not in allowed:
                    # b carries no monomial of this degree, so the equation
                    # degenerates to 0 = -t and any nonzero t is unresolvable
                    extra_residual = max(extra_residual, abs(t))
                    continue
                row = np.zeros(n * len(monos))
                for k in range(n):
                    if w[k] != 0.0:
                        row[col[(k, m)]] = w[k]
                if np.any(row != 0.0) or abs(t) > 0:
                    rows.append(row)
                    rhs.append(-t)

    if rows:
        M = np.array(rows)
        y = np.array(rhs)
        beta, *_ = np.linalg.lstsq(M, y, rcond=None)
        residual = float(np.max(np.abs(M @ beta - y))) if len(y) else 0.0
    else:
        beta = np.zeros(n * len(monos))
        residual = 0.0
    residual = max(residual, extra_residual)

    if residual > tol:
        return ExactnessResult(exact=False, max_residual=residual, witness=None,
                               morphism_action=None)

    witness = []
    for k in range(n):
        coeffs = {m: beta[col[(k, m)]] for m in monos}
        witness.append(Polynomial(nvars, coeffs))
    morphism = A.shift([-p for p in witness])
    corrected = morphism.cocycle()
    check = max((p.max_abs_coeff() for p in corrected.entries.values()), default=0.0)
    if check > tol:
        raise AssertionError(f"exactness witness failed verification (residual {check:.3e})")
    return ExactnessResult(exact=True, max_residual=residual, witness=tuple(witness),
                           morphism_action=morphism)
