"""Hamiltonian flows and flow-evaluation maps.

The flow evaluation of a pair (u, v) at x is the scalar function

    s |-> H_u(phi_v^s(x)),

computed two independent ways: numerically, by integrating X_{H_v} with
classical fixed-step RK4, and through its Taylor expansion at s = 0,

    sum_j H_{B^j(u)}(x) s^j / j!  +  sum_{j>=1} c(B^{j-1}(u), v)(x) s^j / j!

with B(w) = [w, v]. When the iterated brackets hit zero (nilpotent and
abelian algebras) the series truncates to a polynomial in s, and the two
routes must agree up to integrator error. Completeness of a field cannot
be decided numerically; a trajectory escaping |x| > 1e8 is flagged as
blown up instead.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .action import WHAction
from .errors import FlowBlowUpError
from .poisson import PoissonStructure
from .poly import Polynomial

DEFAULT_STEP = 1e-3
BLOWUP_LIMIT = 1e8
_AD_CAP = 16


class CompiledField:
    """Polynomial vector field prepared for fast pointwise evaluation."""

    def __init__(self, components: list[Polynomial]):
        self.nvars = len(components)
        self._comps = []
        for p in components:
            terms = []
            for exp, coeff in p.sorted_terms():
                factors = tuple((i, e) for i, e in enumerate(exp) if e > 0)
                terms.append((coeff, factors))
            self._comps.append(terms)

    def __call__(self, x):
        out = []
        for terms in self._comps:
            s = 0.0
            for coeff, factors in terms:
                v = coeff
                for i, e in factors:
                    if e == 1:
                        v *= x[i]
                    else:
                        v *= x[i] ** e
                s += v
            out.append(s)
        return out


def _rk4_advance(field: CompiledField, x, h: float, steps: int, record=None):
    """March `steps` RK4 steps of size h; returns final point or None on blow-up."""
    n = len(x)
    rng = range(n)
    for _ in range(steps):
        k1 = field(x)
        y = [x[i] + 0.5 * h * k1[i] for i in rng]
        k2 = field(y)
        y = [x[i] + 0.5 * h * k2[i] for i in rng]
        k3 = field(y)
        y = [x[i] + h * k3[i] for i in rng]
        k4 = field(y)
        x = [x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) for i in rng]
        if max(abs(c) for c in x) > BLOWUP_LIMIT:
            return None
        if record is not None:
            record.append(x)
    return x


@dataclass
class Trajectory:
    times: list[float]
    points: list[np.ndarray]
    blew_up: bool

    @property
    def endpoint(self) -> np.ndarray:
        return self.points[-1]


def integrate(P: PoissonStructure, H: Polynomial, x0, t: float, steps: int) -> Trajectory:
    """Fixed-step RK4 trajectory of X_H from x0 over [0, t].

    A blow-up (|x| exceeding 1e8) truncates the trajectory and sets the
    flag; it is reported, not raised.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    x0 = [float(c) for c in x0]
    if len(x0) != P.nvars:
        raise ValueError(f"point has length {len(x0)}, expected {P.nvars}")
    field = CompiledField(P.hamiltonian_vf(H))
    h = float(t) / steps
    times = [0.0]
    raw_points = [x0]
    x = x0
    blew_up = False
    for k in range(1, steps + 1):
        x = _rk4_advance(field, x, h, 1)
        if x is None:
            blew_up = True
            break
        times.append(k * h)
        raw_points.append(x)
    return Trajectory(times=times, points=[np.array(p) for p in raw_points], blew_up=blew_up)


def _steps_for(ds: float, step: float) -> int:
    return max(1, int(math.ceil(abs(ds) / step - 1e-12)))


def zeta_numeric(A: WHAction, u, v, x, s_grid, step: float = DEFAULT_STEP) -> list[float]:
    """H_u along the numerically integrated flow of X_{H_v}, per grid value."""
    H_u = A.hamiltonian_of(u)
    field = CompiledField(A.poisson.hamiltonian_vf(A.hamiltonian_of(v)))
    s_grid = [float(s) for s in s_grid]
    values: dict[int, float] = {}

    for sign in (1.0, -1.0):
        if sign > 0:
            idxs = sorted((k for k, s in enumerate(s_grid) if s >= 0.0), key=lambda k: s_grid[k])
        else:
            idxs = sorted((k for k, s in enumerate(s_grid) if s < 0.0), key=lambda k: -s_grid[k])
        cur = [float(c) for c in x]
        t_cur = 0.0
        for k in idxs:
            ds = s_grid[k] - t_cur
            if abs(ds) > 0.0:
                nsteps = _steps_for(ds, step)
                cur = _rk4_advance(field, cur, ds / nsteps, nsteps)
                if cur is None:
                    raise FlowBlowUpError(f"flow left the safety box before s = {s_grid[k]}")
                t_cur = s_grid[k]
            values[k] = H_u.evaluate(cur)
    return [values[k] for k in range(len(s_grid))]


@dataclass
class ZetaSeries:
    """Expansion coefficients a_j of the flow evaluation at s = 0.

    a_0 = H_u(x) and a_j = H_{B^j(u)}(x) + c(B^{j-1}(u), v)(x) for j >= 1.
    `truncated` means the iterated brackets vanish from `truncation_index`
    on, so the partial sum is the exact value, a polynomial in s.
    """
    coeffs: list[float]
    truncated: bool
    truncation_index: int | None

    def evaluate(self, s: float) -> float:
        total = 0.0
        term = 1.0
        for j, a in enumerate(self.coeffs):
            if j > 0:
                term *= s / j
            total += a * term
        return total


def zeta_series(A: WHAction, u, v, x, jmax: int) -> ZetaSeries:
    """Expansion of the flow evaluation through order jmax."""
    if jmax < 1:
        raise ValueError("jmax must be at least 1")
    iterates, trunc = A.algebra.ad_orbit(u, v, jmax)
    c = A.cocycle()
    coeffs = [A.hamiltonian_of(iterates[0]).evaluate(x)]
    for j in range(1, jmax + 1):
        a = A.hamiltonian_of(iterates[j]).evaluate(x)
        a += c.value(iterates[j - 1], v).evaluate(x)
        coeffs.append(a)
    return ZetaSeries(coeffs=coeffs, truncated=trunc is not None, truncation_index=trunc)


@dataclass
class ZetaComparison:
    max_abs_deviation: float
    s_values: list[float]
    numeric: list[float]
    series_values: list[float]
    series: ZetaSeries


def compare_zeta(A: WHAction, u, v, x, s_min: float, s_max: float, samples: int,
                 step: float = DEFAULT_STEP, jmax: int | None = None) -> ZetaComparison:
    """Sup-norm gap between the integrated and series flow evaluations.

    Requires a truncating series unless jmax is supplied explicitly, in
    which case the comparison uses a partial sum and emits a warning.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    probe, trunc = A.algebra.ad_orbit(u, v, _AD_CAP)
    if trunc is not None:
        series = zeta_series(A, u, v, x, max(1, trunc))
    elif jmax is not None:
        warnings.warn("series does not truncate; comparing against a partial sum")
        series = zeta_series(A, u, v, x, jmax)
    else:
        raise ValueError("series does not truncate within the bracket-depth cap; pass jmax")

    s_values = [s_min + (s_max - s_min) * k / (samples - 1) for k in range(samples)]
    numeric = zeta_numeric(A, u, v, x, s_values, step=step)
    series_values = [series.evaluate(s) for s in s_values]
    dev = 0.0
    for a, b in zip(numeric, series_values):
        dev = max(dev, abs(a - b))
    return ZetaComparison(max_abs_deviation=dev, s_values=s_values, numeric=numeric,
                          series_values=series_values, series=series)


@dataclass
class OrbitLevelsetReport:
    """Expansion coefficient functions evaluated along one orbit of X_{H_v}.

    Index j = 0 tracks H_u itself; j >= 1 tracks the polynomial
    H_{B^j(u)} + c(B^{j-1}(u), v). An orbit that returns to itself must
    keep every one of these functions constant, so a nonzero value of a
    j >= 1 coefficient at the start certifies the orbit is not periodic,
    and a periodic orbit lies inside the corresponding zero level set.
    """
    values_at_start: list[float]
    variations: list[float]
    truncated: bool
    truncation_index: int | None
    blew_up: bool

    def to_dict(self) -> dict:
        return {
            "values_at_start": self.values_at_start,
            "variations": self.variations,
            "truncated": self.truncated,
            "truncation_index": self.truncation_index,
            "blew_up": self.blew_up,
        }


def orbit_levelset_check(A: WHAction, u, v, x0, t: float, steps: int,
                         jmax: int | None = None) -> OrbitLevelsetReport:
    """Track the expansion coefficient functions along the orbit through x0."""
    cap = jmax if jmax is not None else _AD_CAP
    iterates, trunc = A.algebra.ad_orbit(u, v, cap)
    depth = trunc if trunc is not None else cap
    c = A.cocycle()

    funcs = [A.hamiltonian_of(iterates[0])]
    for j in range(1, depth + 1):
        funcs.append(A.hamiltonian_of(iterates[j]) + c.value(iterates[j - 1], v))

    traj = integrate(A.poisson, A.hamiltonian_of(v), x0, t, steps)
    pts = np.array(traj.points)
    values_at_start = [float(g.evaluate(x0)) for g in funcs]
    variations = []
    for g in funcs:
        vals = g.evaluate_batch(pts)
        variations.append(float(np.max(vals) - np.min(vals)))
    return OrbitLevelsetReport(values_at_start=values_at_start, variations=variations,
                               truncated=trunc is not None, truncation_index=trunc,
                               blew_up=traj.blew_up)


# -- batched integration ----------------------------------------------------

class WeightedFrameField:
    """Weighted sums of several polynomial fields, evaluated batch-wise.

    All monomials of all frame fields are fused into a single exponent
    matrix so one batched evaluation serves every component and frame
    weight; the per-point weight row stays fixed along a trajectory.
    """

    def __init__(self, frame_fields: list[list[Polynomial]]):
        self.n_frames = len(frame_fields)
        self.nvars = len(frame_fields[0]) if frame_fields else 0
        exps, coeffs, frame_idx = [], [], []
        comp_idx = [[] for _ in range(self.nvars)]
        t = 0
        for i in range(self.nvars):
            for b, field in enumerate(frame_fields):
                for exp, cf in field[i].sorted_terms():
                    exps.append(exp)
                    coeffs.append(cf)
                    frame_idx.append(b)
                    comp_idx[i].append(t)
                    t += 1
        self._E = np.array(exps, dtype=np.int64).reshape(t, self.nvars)
        self._c = np.array(coeffs, dtype=float)
        self._b = np.array(frame_idx, dtype=np.int64)
        self._comp = [np.array(idx, dtype=np.int64) for idx in comp_idx]

    def eval(self, X: np.ndarray, W: np.ndarray) -> np.ndarray:
        out = np.zeros_like(X)
        if self._c.size == 0:
            return out
        monos = np.prod(X[:, None, :] ** self._E[None, :, :], axis=2) * self._c[None, :]
        Wt = W[:, self._b]
        for i, idx in enumerate(self._comp):
            if idx.size:
                out[:, i] = (monos[:, idx] * Wt[:, idx]).sum(axis=1)
        return out


def integrate_weighted_batch(field: WeightedFrameField, W: np.ndarray,
                             X0: np.ndarray, t: float, steps: int) -> np.ndarray:
    """Time-t RK4 endpoints of the fields sum_b W[:, b] * field_b, batched.

    Every row of X0 is integrated with its own fixed weight row of W; the
    weights select a Hamiltonian in the span of the frame Hamiltonians.
    """
    X = np.array(X0, dtype=float)
    if X.ndim != 2:
        raise ValueError("X0 must be a batch of points")
    W = np.asarray(W, dtype=float)
    if W.shape != (X.shape[0], field.n_frames):
        raise ValueError("weight matrix shape does not match the batch")

    h = float(t) / steps
    for _ in range(steps):
        k1 = field.eval(X, W)
        k2 = field.eval(X + 0.5 * h * k1, W)
        k3 = field.eval(X + 0.5 * h * k2, W)
        k4 = field.eval(X + h * k3, W)
        X = X + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if np.max(np.abs(X)) > BLOWUP_LIMIT:
            raise FlowBlowUpError("batched flow left the safety box")
    return X
