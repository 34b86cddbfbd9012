"""Splitting a manifold with an abelian weakly Hamiltonian action.

Given a constant subspace V of the acting algebra, framed by vectors
v_1..v_2d on which the cocycle restricts to an invertible matrix C(x),
the manifold factors through the slice

    N = {x : H_{v_a}(x) = 0 for all a}.

For each point y the affine law of the flow evaluation makes

    H_{v_a}(y) + c(v_a, v)(y) = 0,  v in V,

a linear system C(y) w = -psi(y); flowing along X_{H_v} for unit time
carries y onto N. That map and its inverse (flow of H_{-v}) realize the
diffeomorphism M ~ R^{2d} x N, checked here pointwise: landing residuals,
roundtrips, the Poisson-Dirac condition on N, and, for constant C, the
product structure of the pushed-forward bracket.

Restricting to constant subspaces with a constant frame is legitimate
exactly because cocycle entries are Casimirs, hence constant along
symplectic leaves; that property is enforced upstream, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .action import CocycleMatrix, WHAction
from .errors import (DegenerateCocycleError, FlowBlowUpError, LandingToleranceError,
                     UnsupportedStructureError)
from .flow import CompiledField, WeightedFrameField, _rk4_advance, integrate_weighted_batch
from .poly import Polynomial

DEFAULT_FLOW_STEPS = 1000
LANDING_TOL = 1e-6
DET_RTOL = 1e-9


class SplitConfig:
    """An action together with a framed subspace of its algebra."""

    def __init__(self, action: WHAction, frame, inner_product=None):
        self.action = action
        n = action.algebra.dim
        vecs = [np.asarray(v, dtype=float) for v in frame]
        for v in vecs:
            if v.shape != (n,):
                raise ValueError(f"frame vectors must have length {n}")
        if len(vecs) % 2 != 0:
            raise ValueError("the framed subspace must have even dimension")
        F = np.array(vecs).T if vecs else np.zeros((n, 0))
        if vecs and linalg.rank(F) != len(vecs):
            raise ValueError("frame vectors are linearly dependent")
        self.frame = F  # (n, 2d), columns are the frame vectors
        self.inner_product = (np.asarray(inner_product, dtype=float)
                              if inner_product is not None else None)

        self.cocycle = action.cocycle()
        nv = action.poisson.nvars
        m = F.shape[1]
        self.frame_hams = [action.hamiltonian_of(F[:, a]) for a in range(m)]
        # upper-triangular polynomial restriction c(v_a, v_b)
        self._coc_polys = {}
        for a in range(m):
            for b in range(a + 1, m):
                self._coc_polys[(a, b)] = self.cocycle.value(F[:, a], F[:, b])
        self._grad_polys = [[H.differentiate(i) for i in range(nv)] for H in self.frame_hams]
        self._vf_polys = [action.poisson.hamiltonian_vf(H) for H in self.frame_hams]
        self._weighted_field = None

    @property
    def half_rank(self) -> int:
        return self.frame.shape[1] // 2

    def weighted_field(self) -> WeightedFrameField:
        if self._weighted_field is None:
            self._weighted_field = WeightedFrameField(self._vf_polys)
        return self._weighted_field


@dataclass
class SplitPoint:
    """Image of one point: translation parameter plus its landing on N."""
    v: np.ndarray             # vector in the algebra, lying in span(frame)
    n_point: np.ndarray
    frame_coords: np.ndarray


def psi(S: SplitConfig, x) -> np.ndarray:
    """Values of the frame Hamiltonians; N is the common zero set."""
    return np.array([H.evaluate(x) for H in S.frame_hams])


def restrict_cocycle(S: SplitConfig, x):
    """(C(x), nondegenerate) with C_ab = c(v_a, v_b)(x)."""
    m = S.frame.shape[1]
    C = np.zeros((m, m))
    for (a, b), p in S._coc_polys.items():
        val = p.evaluate(x)
        C[a, b] = val
        C[b, a] = -val
    if m == 0:
        return C, True
    scale = float(np.max(np.abs(C)))
    if scale == 0.0:
        return C, False
    nondeg = abs(np.linalg.det(C)) > DET_RTOL * scale ** m
    return C, nondeg


def _solve_frame_coords(S: SplitConfig, y) -> np.ndarray:
    C, ok = restrict_cocycle(S, y)
    if not ok:
        raise DegenerateCocycleError(
            f"restricted cocycle is degenerate at {np.asarray(y).tolist()}")
    h = psi(S, y)
    if C.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.solve(C, -h)


def solve_translation(S: SplitConfig, y) -> np.ndarray:
    """The unique v in span(frame) with H_{v_a}(y) + c(v_a, v)(y) = 0 for all a."""
    w = _solve_frame_coords(S, y)
    return S.frame @ w


def _flow_endpoint(S: SplitConfig, v, x, steps: int):
    field = CompiledField(S.action.poisson.hamiltonian_vf(S.action.hamiltonian_of(v)))
    end = _rk4_advance(field, [float(c) for c in x], 1.0 / steps, steps)
    if end is None:
        raise FlowBlowUpError("splitting flow left the safety box")
    return np.array(end)


def split_point(S: SplitConfig, y, steps: int = DEFAULT_FLOW_STEPS,
                landing_tol: float = LANDING_TOL) -> SplitPoint:
    """Forward map: translation parameter and time-1 landing point on N."""
    w = _solve_frame_coords(S, y)
    v = S.frame @ w
    end = _flow_endpoint(S, v, y, steps) if w.size else np.asarray(y, dtype=float).copy()
    residual = float(np.max(np.abs(psi(S, end)))) if w.size else 0.0
    if residual > landing_tol:
        raise LandingToleranceError(
            f"landing residual {residual:.3e} exceeds tolerance {landing_tol:.1e}")
    return SplitPoint(v=v, n_point=end, frame_coords=w)


def split_inverse(S: SplitConfig, v, x, steps: int = DEFAULT_FLOW_STEPS,
                  landing_tol: float = LANDING_TOL) -> np.ndarray:
    """Inverse map: time-1 flow of H_{-v} from a point of N."""
    x = np.asarray(x, dtype=float)
    residual = float(np.max(np.abs(psi(S, x)))) if S.frame.shape[1] else 0.0
    if residual > landing_tol:
        raise ValueError(f"point is not on the slice (residual {residual:.3e})")
    v = np.asarray(v, dtype=float)
    if not np.any(v != 0.0):
        return x.copy()
    return _flow_endpoint(S, -v, x, steps)


def check_poisson_dirac(S: SplitConfig, x, rtol: float = linalg.RANK_RTOL) -> bool:
    """Pointwise transversality: T_xN meets pi#(T_xN^0) only at zero.

    T_xN is the null space of the Jacobian of psi; pi#(T_xN^0) is spanned
    by the frame Hamiltonian vector fields at x.
    """
    m = S.frame.shape[1]
    nv = S.action.poisson.nvars
    if m == 0:
        return True
    J = np.array([[g.evaluate(x) for g in grads] for grads in S._grad_polys])
    TN = linalg.nullspace(J, rtol)
    X = np.array([[comp.evaluate(x) for comp in vf] for vf in S._vf_polys]).T
    assert X.shape == (nv, m)
    return linalg.intersects_trivially(TN, X, rtol)


# -- batched verification -----------------------------------------------------


def _batch_psi(S: SplitConfig, Y: np.ndarray) -> np.ndarray:
    m = S.frame.shape[1]
    out = np.zeros((Y.shape[0], m))
    for a, H in enumerate(S.frame_hams):
        out[:, a] = H.evaluate_batch(Y)
    return out


def _batch_restrict(S: SplitConfig, Y: np.ndarray) -> np.ndarray:
    m = S.frame.shape[1]
    C = np.zeros((Y.shape[0], m, m))
    for (a, b), p in S._coc_polys.items():
        vals = p.evaluate_batch(Y)
        C[:, a, b] = vals
        C[:, b, a] = -vals
    return C


def _batch_solve(S: SplitConfig, Y: np.ndarray) -> np.ndarray:
    m = S.frame.shape[1]
    if m == 0:
        return np.zeros((Y.shape[0], 0))
    C = _batch_restrict(S, Y)
    scale = np.max(np.abs(C), axis=(1, 2))
    dets = np.abs(np.linalg.det(C))
    bad = (scale == 0.0) | (dets <= DET_RTOL * scale ** m)
    if np.any(bad):
        k = int(np.argmax(bad))
        raise DegenerateCocycleError(
            f"restricted cocycle is degenerate at sample {k}: {Y[k].tolist()}")
    return np.linalg.solve(C, -_batch_psi(S, Y)[..., None])[..., 0]


@dataclass
class RoundtripReport:
    roundtrip_max: float
    landing_max: float
    n_points: np.ndarray
    frame_coords: np.ndarray

    def to_dict(self) -> dict:
        return {"roundtrip_max": self.roundtrip_max, "landing_max": self.landing_max}


def roundtrip_check(S: SplitConfig, points, steps: int = DEFAULT_FLOW_STEPS) -> RoundtripReport:
    """Forward-then-inverse residuals over a batch of points."""
    Y = np.array(points, dtype=float)
    m = S.frame.shape[1]
    if m == 0:
        return RoundtripReport(0.0, 0.0, Y.copy(), np.zeros((Y.shape[0], 0)))
    W = _batch_solve(S, Y)
    field = S.weighted_field()
    ends = integrate_weighted_batch(field, W, Y, 1.0, steps)
    landing = float(np.max(np.abs(_batch_psi(S, ends))))
    back = integrate_weighted_batch(field, -W, ends, 1.0, steps)
    roundtrip = float(np.max(np.abs(back - Y)))
    return RoundtripReport(roundtrip_max=roundtrip, landing_max=landing,
                           n_points=ends, frame_coords=W)


@dataclass
class ProductReport:
    bracket_max_error: float
    cross_max: float
    restricted_cocycle: np.ndarray
    target: np.ndarray  # expected bracket matrix of the translation coordinates

    def to_dict(self) -> dict:
        return {
            "bracket_max_error": self.bracket_max_error,
            "cross_max": self.cross_max,
            "max_discrepancy": max(self.bracket_max_error, self.cross_max),
        }


def verify_product(S: SplitConfig, points, fd_step: float = 1e-4,
                   steps: int = DEFAULT_FLOW_STEPS,
                   const_tol: float = 1e-9) -> ProductReport:
    """Check the product structure of the splitting by finite differences.

    Requires the restricted cocycle to be constant over the sampled
    points. Differentiating w = -C^{-1} psi gives bracket matrix
    {w_a, w_b} = (C^{-1})^T entrywise (for antisymmetric C this is
    -C^{-1}); coordinates pulled back from N must bracket to zero with
    every w_a.
    """
    Y = np.array(points, dtype=float)
    nsamp, nv = Y.shape
    m = S.frame.shape[1]
    if m == 0:
        raise UnsupportedStructureError("empty frame: nothing to verify")

    C_all = _batch_restrict(S, Y)
    C0 = C_all[0]
    scale = max(1.0, float(np.max(np.abs(C0))))
    if float(np.max(np.abs(C_all - C0))) > const_tol * scale:
        raise UnsupportedStructureError(
            "restricted cocycle is not constant over the sampled points")
    if abs(np.linalg.det(C0)) <= DET_RTOL * float(np.max(np.abs(C0))) ** m:
        raise DegenerateCocycleError("restricted cocycle is degenerate")
    target = np.linalg.inv(C0).T

    offsets = fd_step * np.eye(nv)
    stencil = np.concatenate([Y[:, None, :] + offsets[None, :, :],
                              Y[:, None, :] - offsets[None, :, :]], axis=1)
    stencil = stencil.reshape(nsamp * 2 * nv, nv)
    W = _batch_solve(S, stencil)
    ends = integrate_weighted_batch(S.weighted_field(), W, stencil, 1.0, steps)

    W = W.reshape(nsamp, 2, nv, m)
    ends = ends.reshape(nsamp, 2, nv, nv)
    G = (W[:, 0] - W[:, 1]) / (2.0 * fd_step)       # (nsamp, nv, m): d_i w_a
    G = np.transpose(G, (0, 2, 1))                  # (nsamp, m, nv)
    K = (ends[:, 0] - ends[:, 1]) / (2.0 * fd_step)  # (nsamp, nv_in, nv_out)
    K = np.transpose(K, (0, 2, 1))                  # (nsamp, nv_out, nv_in)

    Pi = np.array([S.action.poisson.matrix_at(y) for y in Y])
    D = np.einsum("mai,mij,mbj->mab", G, Pi, G)
    cross = np.einsum("mai,mij,mkj->mak", G, Pi, K)
    bracket_max = float(np.max(np.abs(D - target[None, :, :])))
    cross_max = float(np.max(np.abs(cross)))
    return ProductReport(bracket_max_error=bracket_max, cross_max=cross_max,
                         restricted_cocycle=C0, target=target)


@dataclass
class ResidualActionReport:
    """Kernel/complement decomposition and the induced action on the slice."""
    kernel_basis: np.ndarray        # (n, k) columns
    complement_basis: np.ndarray    # (n, 2d) columns
    split: SplitConfig
    residual_hams: tuple[Polynomial, ...]
    residual_cocycle: dict
    residual_cocycle_zero: bool
    slice_polys: tuple[Polynomial, ...]

    def to_dict(self) -> dict:
        return {
            "kernel_dim": self.kernel_basis.shape[1],
            "translational_dim": self.complement_basis.shape[1],
            "residual_cocycle_zero": self.residual_cocycle_zero,
        }


def residual_action(A: WHAction, c: CocycleMatrix | None = None,
                    inner_product=None) -> ResidualActionReport:
    """Split the action into translational and Hamiltonian parts.

    Needs a constant cocycle so that ker c has the trivial constant
    framing; the complement is taken with respect to the supplied inner
    product (identity by default). The restriction of the cocycle to the
    kernel vanishes, which certifies the residual action is Hamiltonian.
    """
    if c is None:
        c = A.cocycle()
    for p in c.entries.values():
        if not p.is_constant():
            raise UnsupportedStructureError(
                "residual splitting needs a constant cocycle; entries vary over the manifold")
    n = A.algebra.dim
    origin = np.zeros(A.poisson.nvars)
    C0 = c.evaluate_at(origin)
    K = linalg.nullspace(C0)
    G = np.asarray(inner_product, dtype=float) if inner_product is not None else None
    V = linalg.orthogonal_complement(K, G)
    S = SplitConfig(A, [V[:, a] for a in range(V.shape[1])], inner_product)

    residual_hams = tuple(A.hamiltonian_of(K[:, a]) for a in range(K.shape[1]))
    residual_entries = {}
    worst = 0.0
    for a in range(K.shape[1]):
        for b in range(a + 1, K.shape[1]):
            p = c.value(K[:, a], K[:, b])
            residual_entries[(a, b)] = p
            worst = max(worst, p.max_abs_coeff())
    return ResidualActionReport(kernel_basis=K, complement_basis=V, split=S,
                                residual_hams=residual_hams,
                                residual_cocycle=residual_entries,
                                residual_cocycle_zero=worst <= 1e-12,
                                slice_polys=tuple(S.frame_hams))


@dataclass
class SplitSampleReport:
    roundtrip_max: float
    landing_max: float
    dirac_ok: bool
    product_max_discrepancy: float | None

    def to_dict(self) -> dict:
        return {
            "roundtrip_max": self.roundtrip_max,
            "landing_max": self.landing_max,
            "dirac_ok": self.dirac_ok,
            "product_max_discrepancy": self.product_max_discrepancy,
        }


def split_report(S: SplitConfig, points, dirac_count: int = 20,
                 product_count: int = 20, fd_step: float = 1e-4,
                 steps: int = DEFAULT_FLOW_STEPS) -> SplitSampleReport:
    """Roundtrip, landing, Poisson-Dirac and (constant-C) product checks."""
    Y = np.array(points, dtype=float)
    rt = roundtrip_check(S, Y, steps=steps)
    dirac_ok = all(check_poisson_dirac(S, p) for p in rt.n_points[:dirac_count])
    product_max = None
    if S.frame.shape[1] > 0:
        try:
            pr = verify_product(S, Y[:product_count], fd_step=fd_step, steps=steps)
            product_max = max(pr.bracket_max_error, pr.cross_max)
        except UnsupportedStructureError:
            product_max = None
    return SplitSampleReport(roundtrip_max=rt.roundtrip_max, landing_max=rt.landing_max,
                             dirac_ok=dirac_ok, product_max_discrepancy=product_max)
