"""Sparse multivariate polynomials over the coordinates of R^N.

Every function this toolkit manipulates (Hamiltonians, Poisson matrix
entries, Casimirs, cocycle values) is stored in this representation: a
dict mapping exponent multi-indices to float coefficients.

Coefficients with absolute value <= 1e-12 are dropped on construction,
so identical-zero tests stay robust against float cancellation noise.
Terms iterate in graded lexicographic order, which makes serialization
and printing reproducible.
"""

from __future__ import annotations

import numpy as np

COEFF_EPS = 1e-12


def _grlex_key(exp):
    return (sum(exp), exp)


class Polynomial:
    """Immutable sparse polynomial: {exponent tuple: coefficient}."""

    __slots__ = ("nvars", "terms", "_np_cache")

    def __init__(self, nvars: int, terms=None):
        nvars = int(nvars)
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = float(coeff)
            if abs(c) > COEFF_EPS:
                clean[exp] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_np_cache", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: float) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def coordinate(cls, nvars: int, i: int) -> "Polynomial":
        """The coordinate function x_i (0-based index)."""
        if not 0 <= i < nvars:
            raise IndexError(f"coordinate index {i} out of range for {nvars} variables")
        exp = tuple(1 if k == i else 0 for k in range(nvars))
        return cls(nvars, {exp: 1.0})

    @classmethod
    def monomial(cls, nvars: int, exp, coeff: float = 1.0) -> "Polynomial":
        return cls(nvars, {tuple(exp): coeff})

    # -- ring operations ---------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        self._check_compatible(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0.0) + c
        return Polynomial(self.nvars, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_compatible(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0.0) + c1 * c2
        return Polynomial(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor: float) -> "Polynomial":
        factor = float(factor)
        return Polynomial(self.nvars, {e: factor * c for e, c in self.terms.items()})

    def differentiate(self, i: int) -> "Polynomial":
        """Exact partial derivative with respect to coordinate i."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"coordinate index {i} out of range for {self.nvars} variables")
        out = {}
        for exp, c in self.terms.items():
            k = exp[i]
            if k == 0:
                continue
            new = list(exp)
            new[i] = k - 1
            out[tuple(new)] = c * k
        return Polynomial(self.nvars, out)

    # -- queries -----------------------------------------------------------

    def evaluate(self, x) -> float:
        """Direct monomial sum at a point of length nvars."""
        if len(x) != self.nvars:
            raise ValueError(f"point has length {len(x)}, expected {self.nvars}")
        total = 0.0
        for exp, c in self.terms.items():
            v = c
            for i, e in enumerate(exp):
                if e == 1:
                    v *= x[i]
                elif e > 1:
                    v *= x[i] ** e
            total += v
        return total

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at every row of a (B, nvars) array, returning shape (B,)."""
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != self.nvars:
            raise ValueError(f"expected shape (B, {self.nvars}), got {points.shape}")
        cache = self._np_cache
        if cache is None:
            exps = np.array(sorted(self.terms, key=_grlex_key), dtype=np.int64)
            exps = exps.reshape(len(self.terms), self.nvars)
            coeffs = np.array([self.terms[tuple(e)] for e in exps], dtype=float)
            cache = (exps, coeffs)
            object.__setattr__(self, "_np_cache", cache)
        exps, coeffs = cache
        if len(coeffs) == 0:
            return np.zeros(points.shape[0])
        monos = np.prod(points[:, None, :] ** exps[None, :, :], axis=2)
        return monos @ coeffs

    def is_zero(self, tol: float = COEFF_EPS) -> bool:
        """True iff every coefficient is <= tol in absolute value."""
        if tol < 0:
            raise ValueError("tolerance must be non-negative")
        return all(abs(c) <= tol for c in self.terms.values())

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> float:
        return self.terms.get((0,) * self.nvars, 0.0)

    def embed(self, nvars: int, offset: int = 0) -> "Polynomial":
        """Reinterpret in a larger coordinate space, variables shifted by offset."""
        if offset < 0 or offset + self.nvars > nvars:
            raise ValueError("embedding does not fit")
        pad_left = (0,) * offset
        pad_right = (0,) * (nvars - offset - self.nvars)
        return Polynomial(nvars, {pad_left + e + pad_right: c for e, c in self.terms.items()})

    def sorted_terms(self):
        """Terms in graded lexicographic order (degree first, then lex)."""
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]))

    def equals(self, other: "Polynomial", tol: float = COEFF_EPS) -> bool:
        return (self - other).is_zero(tol)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exp) if e > 0]
            if not factors:
                parts.append(f"{c:g}")
            elif c == 1.0:
                parts.append("*".join(factors))
            elif c == -1.0:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c:g}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list:
        return [{"coeff": c, "exp": list(e)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data, nvars: int) -> "Polynomial":
        terms = {}
        for k, item in enumerate(data):
            if not isinstance(item, dict) or "coeff" not in item or "exp" not in item:
                raise ValueError(f"term {k}: expected an object with 'coeff' and 'exp'")
            exp = tuple(int(e) for e in item["exp"])
            terms[exp] = terms.get(exp, 0.0) + float(item["coeff"])
        return cls(nvars, terms)
