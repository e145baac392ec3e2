"""Horofunctions of the Thompson metric on the open cone and of the normed
space (A, ||.||_u), Busemann geodesics, detour distances and parts, and the
extension of the exponential map to the horofunction boundary.

Index sets I, J are 1-based labels into the Jordan frame, matching the usual
notation p_1, ..., p_r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import algebra as alg
from . import config
from . import order
from .algebra import Element
from .errors import DomainError, ParamsError
from .limits import ExpPath, PathSample, base_distance

MODES = ("thompson", "hilbert")


def _frame_defect(frame: Sequence[Element]) -> float:
    """Largest violation of the Jordan frame identities."""
    u = alg.unit(frame[0].algebra)
    worst = (alg.frame_sum(frame, range(len(frame))) - u).norm()
    for i, p in enumerate(frame):
        worst = max(worst, (alg.square(p) - p).norm(), abs(alg.trace(p) - 1.0))
        for q in frame[i + 1:]:
            worst = max(worst, alg.jordan_product(p, q).norm())
    return worst


@dataclass(frozen=True, eq=False)
class BoundaryParams:
    """Combinatorial horofunction data: Jordan frame, disjoint I, J, exponents.

    mode "thompson": I u J nonempty and min over I u J of alpha is 0.
    mode "hilbert":  I, J both nonempty and min_I alpha = 0 = min_J alpha.
    """

    frame: tuple
    I: tuple
    J: tuple
    alpha: Mapping[int, float]
    mode: str = "thompson"

    def __post_init__(self):
        object.__setattr__(self, "frame", tuple(self.frame))
        object.__setattr__(self, "I", tuple(sorted(int(i) for i in self.I)))
        object.__setattr__(self, "J", tuple(sorted(int(j) for j in self.J)))
        object.__setattr__(self, "alpha", {int(k): float(v) for k, v in dict(self.alpha).items()})
        self._validate()

    def _validate(self):
        if self.mode not in MODES:
            raise ParamsError(f"mode must be one of {MODES}")
        if not self.frame:
            raise ParamsError("empty frame")
        a = self.frame[0].algebra
        if any(p.algebra != a for p in self.frame):
            raise ParamsError("frame members live in different algebras")
        if len(self.frame) != a.rank:
            raise ParamsError(f"a Jordan frame of {a} has {a.rank} members, got {len(self.frame)}")
        defect = _frame_defect(self.frame)
        if defect > 1e3 * config.get().tol:
            raise ParamsError(f"frame is not a Jordan frame (defect {defect:.3e})")
        I, J = set(self.I), set(self.J)
        if len(I) != len(self.I) or len(J) != len(self.J):
            raise ParamsError("repeated index")
        if I & J:
            raise ParamsError("I and J must be disjoint")
        if not I | J:
            raise ParamsError("I u J must be nonempty")
        if not all(1 <= k <= a.rank for k in I | J):
            raise ParamsError(f"indices must lie in 1..{a.rank}")
        if set(self.alpha) != I | J:
            raise ParamsError("alpha must be given exactly on I u J")
        if not all(math.isfinite(v) for v in self.alpha.values()):
            raise ParamsError("alpha must be finite")
        tol = config.get().tol
        if self.mode == "thompson":
            if abs(min(self.alpha.values())) > tol:
                raise ParamsError("thompson mode requires min over I u J of alpha = 0")
        else:
            if not I or not J:
                raise ParamsError("hilbert mode requires I and J both nonempty")
            if abs(min(self.alpha[i] for i in I)) > tol or abs(min(self.alpha[j] for j in J)) > tol:
                raise ParamsError("hilbert mode requires min_I alpha = 0 = min_J alpha")

    @property
    def algebra(self):
        return self.frame[0].algebra

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def projection(self, indices) -> Element:
        return alg.frame_sum(self.frame, [k - 1 for k in indices])

    @property
    def p_I(self) -> Element:
        return self.projection(self.I)

    @property
    def p_J(self) -> Element:
        return self.projection(self.J)

    def weighted(self, indices, f=lambda a: a) -> Element:
        """sum_{k in indices} f(alpha_k) p_k."""
        out = alg.zero(self.algebra)
        for k in indices:
            out = out + f(self.alpha[k]) * self.frame[k - 1]
        return out

    def coefficients(self, t: float) -> np.ndarray:
        """Frame coefficients of t * omega + zeta."""
        c = np.zeros(self.rank)
        for i in self.I:
            c[i - 1] = t - self.alpha[i]
        for j in self.J:
            c[j - 1] = -t + self.alpha[j]
        return c

    @property
    def omega(self) -> Element:
        return self.p_I - self.p_J

    @property
    def zeta(self) -> Element:
        return self.weighted(self.J) - self.weighted(self.I)

    def with_mode(self, mode: str) -> "BoundaryParams":
        return BoundaryParams(self.frame, self.I, self.J, self.alpha, mode)


def normalized(frame, I, J, alpha: Mapping[int, float], mode: str = "thompson") -> BoundaryParams:
    """Shift alpha so that the normalisation of ``mode`` holds."""
    alpha = {int(k): float(v) for k, v in alpha.items()}
    if mode == "thompson":
        m = min(alpha.values())
        alpha = {k: v - m for k, v in alpha.items()}
    else:
        mi = min(alpha[i] for i in I)
        mj = min(alpha[j] for j in J)
        alpha = {k: v - (mi if k in set(I) else mj) for k, v in alpha.items()}
    return BoundaryParams(tuple(frame), tuple(I), tuple(J), alpha, mode)


@dataclass(frozen=True, eq=False)
class HoroPair:
    """Boundary pair (y, z) in the closed cone with y o z = 0.

    mode "thompson": max(|y|_u, |z|_u) = 1; mode "hilbert": |y|_u = |z|_u = 1.
    """

    y: Element
    z: Element
    mode: str = "thompson"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParamsError(f"mode must be one of {MODES}")
        alg._check_same(self.y, self.z)
        tol = 1e3 * config.get().tol
        for name, e in (("y", self.y), ("z", self.z)):
            if alg.lambda_min(e) < -tol:
                raise ParamsError(f"{name} is not in the closed cone")
        if alg.jordan_product(self.y, self.z).norm() > tol:
            raise ParamsError("y o z must vanish")
        ny, nz = order.order_unit_norm(self.y), order.order_unit_norm(self.z)
        if self.mode == "thompson":
            if ny <= tol and nz <= tol:
                raise ParamsError("degenerate pair: y = z = 0")
            if abs(max(ny, nz) - 1.0) > tol:
                raise ParamsError(f"thompson pairs need max(|y|_u, |z|_u) = 1, got {max(ny, nz)!r}")
        elif abs(ny - 1.0) > tol or abs(nz - 1.0) > tol:
            raise ParamsError(f"hilbert pairs need |y|_u = |z|_u = 1, got {ny!r}, {nz!r}")
        object.__setattr__(self, "_y_zero", ny <= tol)
        object.__setattr__(self, "_z_zero", nz <= tol)

    @property
    def algebra(self):
        return self.y.algebra

    @property
    def y_is_zero(self) -> bool:
        return self._y_zero

    @property
    def z_is_zero(self) -> bool:
        return self._z_zero

    def __call__(self, x: Element) -> float:
        if self.mode == "thompson":
            return eval_thompson_horofunction(self, x)
        from .hilbert import eval_hilbert_horofunction

        return eval_hilbert_horofunction(self, x)


def params_to_pair(params: BoundaryParams) -> HoroPair:
    """y = sum_I e^{-alpha_i} p_i, z = sum_J e^{-alpha_j} p_j."""
    neg_exp = lambda a: math.exp(-a)
    return HoroPair(params.weighted(params.I, neg_exp), params.weighted(params.J, neg_exp), params.mode)


def exp_extension_thompson(params: BoundaryParams) -> HoroPair:
    """Image of the normed-space horofunction ``params`` under the extended exp map."""
    return params_to_pair(params.with_mode("thompson") if params.mode != "thompson" else params)


def pair_to_params(pair: HoroPair) -> BoundaryParams:
    """One presentation of a pair: a common frame from the spectral decomposition of y - z."""
    dec = alg.spectral_decompose(pair.y - pair.z)
    lam = dec.eigenvalues
    thr = config.get().support_rel
    I = [k + 1 for k, v in enumerate(lam) if v > thr]
    J = [k + 1 for k, v in enumerate(lam) if v < -thr]
    alpha = {k: -math.log(abs(lam[k - 1])) for k in I + J}
    # exact normalisation; the pair norms are 1 only up to roundoff
    return normalized(dec.frame, I, J, alpha, pair.mode)


def _as_pair(h) -> HoroPair:
    return params_to_pair(h) if isinstance(h, BoundaryParams) else h


def _as_params(h) -> BoundaryParams:
    return h if isinstance(h, BoundaryParams) else pair_to_params(h)


# -- evaluation ----------------------------------------------------------------


def _roots(x: Element):
    dec = alg.spectral_decompose(x)
    lam = dec.eigenvalues
    return dec.reconstruct(np.sqrt(lam)), dec.reconstruct(1.0 / np.sqrt(lam))


def _gauge_terms(pair: HoroPair, sqrt_x: Element, inv_sqrt_x: Element) -> list:
    """[log M(y/x), log M(z/x^{-1})] with zero members omitted."""
    terms = []
    if not pair.y_is_zero:
        terms.append(math.log(alg.lambda_max(alg.quadratic_rep(inv_sqrt_x, pair.y))))
    if not pair.z_is_zero:
        terms.append(math.log(alg.lambda_max(alg.quadratic_rep(sqrt_x, pair.z))))
    return terms


def eval_thompson_horofunction(pair: HoroPair, x) -> float:
    """h(x) = max(log M(y/x), log M(z/x^{-1}))."""
    x = order._interior(x, "probe")
    alg._check_same(pair.y, x)
    return max(_gauge_terms(pair, *_roots(x)))


def eval_norm_horofunction(params: BoundaryParams, v: Element) -> float:
    """Horofunction of (A, ||.||_u):

    g(v) = max(Lambda_{A(p_I)}(-U_{p_I} v - sum_I alpha_i p_i),
               Lambda_{A(p_J)}( U_{p_J} v - sum_J alpha_j p_j)).
    """
    alg._check_same(params.frame[0], v)
    terms = []
    if params.I:
        p = params.p_I
        terms.append(alg.peirce_lambda_max(p, -alg.peirce_project(p, v) - params.weighted(params.I)))
    if params.J:
        p = params.p_J
        terms.append(alg.peirce_lambda_max(p, alg.peirce_project(p, v) - params.weighted(params.J)))
    return max(terms)


# -- Busemann geodesics ------------------------------------------------------------


class BusemannPath(ExpPath):
    """psi(t) = exp(t * omega + zeta) with omega = p_I - p_J, zeta = -a_I + a_J.

    Points are built directly from the frame, so they are exact functional
    calculus in the span of the frame.
    """

    def __init__(self, params: BoundaryParams):
        self.params = params
        super().__init__(lambda t: t * params.omega + params.zeta)

    @property
    def omega(self) -> Element:
        return self.params.omega

    @property
    def zeta(self) -> Element:
        return self.params.zeta

    def _combine(self, coefficients) -> Element:
        return alg.Element(self.params.algebra, sum(c * p.coords for c, p in zip(coefficients, self.params.frame)))

    def sample(self, t: float) -> PathSample:
        c = self.params.coefficients(t)
        return PathSample(
            point=self._combine(np.exp(c)),
            inverse=self._combine(np.exp(-c)),
            sqrt=self._combine(np.exp(c / 2)),
            inv_sqrt=self._combine(np.exp(-c / 2)),
        )

    def point(self, t: float) -> Element:
        return self._combine(np.exp(self.params.coefficients(t)))

    def inverse(self, t: float) -> Element:
        return self._combine(np.exp(-self.params.coefficients(t)))


def busemann_path(params: BoundaryParams, t: float) -> Element:
    if t < 0:
        raise DomainError("Busemann paths are parametrised by t >= 0")
    return BusemannPath(params).point(t)


def geodesic_rows(params: BoundaryParams, ts: Sequence[float]) -> list:
    """(t, d_T(psi(t), u), |e^{-t} psi(t) - y|_u, |e^{-t} psi(t)^{-1} - z|_u) per t."""
    path = BusemannPath(params)
    pair = params_to_pair(params)
    rows = []
    for t in ts:
        if t < 0:
            raise DomainError("Busemann paths are parametrised by t >= 0")
        s = path.sample(t)
        rows.append((
            float(t),
            base_distance(s, "thompson"),
            order.order_unit_norm(math.exp(-t) * s.point - pair.y),
            order.order_unit_norm(math.exp(-t) * s.inverse - pair.z),
        ))
    return rows


# -- parts and detour distance -----------------------------------------------------


def _same_support(a: Element, b: Element) -> bool:
    return alg.allclose(order.support_idempotent(a), order.support_idempotent(b), atol=1e3 * config.get().tol)


def same_part_thompson(h, hp) -> bool:
    h, hp = _as_pair(h), _as_pair(hp)
    return _same_support(h.y, hp.y) and _same_support(h.z, hp.z)


def _same_params(a: BoundaryParams, b: BoundaryParams) -> bool:
    return a is b or (
        (a.I, a.J, a.alpha, a.mode) == (b.I, b.J, b.alpha, b.mode)
        and all(np.array_equal(p.coords, q.coords) for p, q in zip(a.frame, b.frame))
    )


def _identical(h: HoroPair, hp: HoroPair) -> bool:
    return h is hp or (np.array_equal(h.y.coords, hp.y.coords) and np.array_equal(h.z.coords, hp.z.coords))


def _log_gauges(pair_from: HoroPair, pair_to: HoroPair) -> list:
    """log M(y'/y), log M(z'/z) inside the support subalgebras, zero members omitted."""
    terms = []
    for a, b, a_zero in ((pair_from.y, pair_to.y, pair_from.y_is_zero), (pair_from.z, pair_to.z, pair_from.z_is_zero)):
        if a_zero:
            continue
        p = order.support_idempotent(a)
        terms.append(math.log(order.peirce_upper_gauge(b, a, p)))
    return terms


def detour_cost_thompson(h, hp) -> float:
    """H(h, h') = max(log M(y'/y), log M(z'/z)) when y dominates y' and z dominates z'."""
    h, hp = _as_pair(h), _as_pair(hp)
    if not (order.dominates(hp.y, h.y) and order.dominates(hp.z, h.z)):
        return math.inf
    return max(_log_gauges(h, hp))


def detour_distance_thompson(h, hp) -> float:
    """delta(h, h'): the Hilbert distance between (y, z) and (y', z') on the
    product of the support cones, or +inf when h and h' lie in different parts."""
    h, hp = _as_pair(h), _as_pair(hp)
    alg._check_same(h.y, hp.y)
    if _identical(h, hp):
        return 0.0
    if not same_part_thompson(h, hp):
        return math.inf
    return max(0.0, max(_log_gauges(h, hp)) + max(_log_gauges(hp, h)))


def detour_cost_limit_thompson(h, hp, t: float) -> float:
    """d_T(u, psi(t)) + h'(psi(t)) along the Busemann path psi of h.

    The true limit jumps to +inf as soon as y' leaves the face of y, so this
    estimate is only meaningful when y', z' are supported exactly (not just up
    to roundoff) where y, z are; roundoff off the support is amplified by e^{2t}.
    """
    params = _as_params(h)
    hp = _as_pair(hp)
    s = BusemannPath(params).sample(t)
    c = params.coefficients(t)
    # psi(t)^{+-1/2} have spectra spread over e^{+-t}; go through Peirce components
    terms = []
    if not hp.y_is_zero:
        terms.append(math.log(alg.lambda_max(alg.frame_quadratic_rep(params.frame, np.exp(-c / 2), hp.y))))
    if not hp.z_is_zero:
        terms.append(math.log(alg.lambda_max(alg.frame_quadratic_rep(params.frame, np.exp(c / 2), hp.z))))
    return base_distance(s, "thompson") + max(terms)


def detour_limit_thompson(h, hp, t: float = 30.0) -> float:
    return detour_cost_limit_thompson(h, hp, t) + detour_cost_limit_thompson(hp, h, t)


# -- metric functionals ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MetricFunctional:
    """Either an interior functional h_y(x) = d(x, y) - d(u, y) or a horofunction.

    ``metric`` selects d_T or d_H; the basepoint is always the unit.
    """

    point: Element | None = None
    pair: HoroPair | None = None
    metric: str = "thompson"

    def __post_init__(self):
        if (self.point is None) == (self.pair is None):
            raise ValueError("give exactly one of point, pair")
        if self.metric not in MODES:
            raise ValueError(f"metric must be one of {MODES}")
        if self.point is not None:
            order._interior(self.point)

    @property
    def variant(self) -> str:
        return "interior" if self.point is not None else "horofunction"

    def __call__(self, x: Element) -> float:
        if self.pair is not None:
            if self.metric == "thompson":
                return eval_thompson_horofunction(self.pair, x)
            from .hilbert import eval_hilbert_horofunction

            return eval_hilbert_horofunction(self.pair, x)
        dist = order.thompson_distance if self.metric == "thompson" else order.hilbert_distance
        u = alg.unit(self.point.algebra)
        return dist(x, self.point) - dist(u, self.point)
