"""Horofunctions of the variation norm on traceless elements and of the
Hilbert metric on the det = 1 slice of the cone, with their Busemann paths,
detour distances, parts, and the extended exponential map between them."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from . import config
from . import order
from .algebra import Element
from .errors import DomainError, ParamsError
from .limits import ExpPath, LinePath, PathSample
from .thompson import BoundaryParams, HoroPair, _as_pair, _gauge_terms, _identical, _roots, _same_params, _same_support, params_to_pair


@dataclass(frozen=True, eq=False)
class VariationHorofunction:
    """g(v) = Lambda_{A(p_I)}(-U_{p_I} v - a_I) + Lambda_{A(p_J)}(U_{p_J} v - a_J)."""

    params: BoundaryParams

    def __post_init__(self):
        if self.params.mode != "hilbert":
            raise ParamsError("variation horofunctions need hilbert-mode parameters")

    @property
    def algebra(self):
        return self.params.algebra

    def __call__(self, v: Element) -> float:
        return eval_variation_horofunction(self, v)


@dataclass(frozen=True, eq=False)
class HilbertHorofunction:
    """h(x) = log M(y/x) + log M(z/x^{-1}) on det = 1 points."""

    pair: HoroPair

    def __post_init__(self):
        if self.pair.mode != "hilbert":
            raise ParamsError("Hilbert horofunctions need a hilbert-mode pair")

    def __call__(self, x: Element) -> float:
        return eval_hilbert_horofunction(self, x)


def _as_variation(g) -> VariationHorofunction:
    return g if isinstance(g, VariationHorofunction) else VariationHorofunction(g)


def _as_hilbert_pair(h) -> HoroPair:
    if isinstance(h, HilbertHorofunction):
        return h.pair
    if isinstance(h, VariationHorofunction):
        return params_to_pair(h.params)
    return _as_pair(h)


def eval_variation_horofunction(g, v) -> float:
    g = _as_variation(g)
    v = v.element if isinstance(v, order.TangentVector) else order.TangentVector(v).element
    prm = g.params
    alg._check_same(prm.frame[0], v)
    p_i, p_j = prm.p_I, prm.p_J
    first = alg.peirce_lambda_max(p_i, -alg.peirce_project(p_i, v) - prm.weighted(prm.I))
    second = alg.peirce_lambda_max(p_j, alg.peirce_project(p_j, v) - prm.weighted(prm.J))
    return first + second


def busemann_path_variation(g, t: float) -> Element:
    """xi^t = t omega + zeta - (1/r) tr(t omega + zeta) u."""
    if t < 0:
        raise DomainError("Busemann paths are parametrised by t >= 0")
    return VariationPath(g).sample(t).point


class VariationPath(LinePath):
    """The straight line t -> xi^t in the traceless elements."""

    def __init__(self, g):
        prm = _as_variation(g).params
        u = alg.unit(prm.algebra)
        r = prm.rank
        direction = prm.omega - (alg.trace(prm.omega) / r) * u
        offset = prm.zeta - (alg.trace(prm.zeta) / r) * u
        super().__init__(direction, offset)
        self.params = prm


class HilbertPath(ExpPath):
    """t -> exp(xi^t), the det = 1 image of the variation Busemann path."""

    def __init__(self, g):
        prm = _as_variation(g).params
        self.params = prm
        super().__init__(lambda t: VariationPath(prm).sample(t).point)

    def sample(self, t: float) -> PathSample:
        c = self.params.coefficients(t)
        c = c - c.mean()
        frame = self.params.frame
        combine = lambda w: Element(self.params.algebra, sum(a * p.coords for a, p in zip(w, frame)))
        return PathSample(combine(np.exp(c)), combine(np.exp(-c)), combine(np.exp(c / 2)), combine(np.exp(-c / 2)))


def same_part_variation(g, gp) -> bool:
    a, b = _as_variation(g).params, _as_variation(gp).params
    atol = 1e3 * config.get().tol
    return alg.allclose(a.p_I, b.p_I, atol=atol) and alg.allclose(a.p_J, b.p_J, atol=atol)


def detour_distance_variation(g, gp) -> float:
    """Sum of the four Peirce-Lambda terms when p_I = q_I' and p_J = q_J', else +inf."""
    g, gp = _as_variation(g), _as_variation(gp)
    a, b = g.params, gp.params
    alg._check_same(a.frame[0], b.frame[0])
    if _same_params(a, b):
        return 0.0
    if not same_part_variation(g, gp):
        return math.inf
    total = 0.0
    for p, lhs, rhs in ((a.p_I, a.weighted(a.I), b.weighted(b.I)), (a.p_J, a.weighted(a.J), b.weighted(b.J))):
        total += alg.peirce_lambda_max(p, lhs - rhs) + alg.peirce_lambda_max(p, rhs - lhs)
    return max(0.0, total)


def detour_cost_limit_variation(g, gp, t: float) -> float:
    """|xi^t|_u + g'(xi^t) along the Busemann path of g."""
    xi = VariationPath(g).sample(t).point
    return order.variation_seminorm(xi) + eval_variation_horofunction(gp, xi)


def detour_limit_variation(g, gp, t: float = 30.0) -> float:
    return detour_cost_limit_variation(g, gp, t) + detour_cost_limit_variation(gp, g, t)


def _projective(x) -> Element:
    x = x.element if isinstance(x, order.ProjectivePoint) else x
    return order.ProjectivePoint(x).element


def eval_hilbert_horofunction(h, x) -> float:
    pair = _as_hilbert_pair(h)
    if pair.mode != "hilbert":
        raise ParamsError("Hilbert horofunctions need a hilbert-mode pair")
    x = _projective(x)
    alg._check_same(pair.y, x)
    return sum(_gauge_terms(pair, *_roots(x)))


def exp_extension_hilbert(g) -> HilbertHorofunction:
    return HilbertHorofunction(params_to_pair(_as_variation(g).params))


def same_part_hilbert(h, hp) -> bool:
    a, b = _as_hilbert_pair(h), _as_hilbert_pair(hp)
    return _same_support(a.y, b.y) and _same_support(a.z, b.z)


def hilbert_functional_identical(h, hp) -> bool:
    return _identical(_as_hilbert_pair(h), _as_hilbert_pair(hp))
