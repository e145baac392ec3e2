"""Order gauges, the Thompson and Hilbert distances, and parts of the cone."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from . import config
from .algebra import Element
from .errors import DomainError, NotInteriorError

INTERIOR, BOUNDARY, OUTSIDE = "interior", "boundary", "outside"


@dataclass(frozen=True, eq=False)
class ConePoint:
    element: Element
    classification: str
    min_eigenvalue: float

    @property
    def is_interior(self) -> bool:
        return self.classification == INTERIOR


def classify(x: Element) -> ConePoint:
    lam = alg.eigenvalues(x)
    scale = max(1.0, abs(lam[0]))
    thr = config.get().interior_rel * scale
    if lam[-1] > thr:
        kind = INTERIOR
    elif lam[-1] >= -config.get().tol * scale:
        kind = BOUNDARY
    else:
        kind = OUTSIDE
    return ConePoint(x, kind, float(lam[-1]))


def _interior(x, what="point") -> Element:
    x = x.element if isinstance(x, ConePoint) else x
    point = classify(x)
    if not point.is_interior:
        raise NotInteriorError(f"{what} is not interior (min eigenvalue {point.min_eigenvalue:.3e})")
    return x


def _positive(x, what="point") -> Element:
    x = x.element if isinstance(x, ConePoint) else x
    if classify(x).classification == OUTSIDE:
        raise DomainError(f"{what} is not in the closed cone")
    return x


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """Representative of a ray of the open cone, normalised to det = 1."""

    element: Element

    def __post_init__(self):
        _interior(self.element)
        det = alg.determinant(self.element)
        if abs(det - 1.0) > 1e3 * config.get().tol:
            raise DomainError(f"projective representative must have det 1, got {det!r}")


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Traceless element, i.e. a tangent vector to det = 1 at the unit."""

    element: Element

    def __post_init__(self):
        tr = alg.trace(self.element)
        if abs(tr) > config.get().tol * max(1.0, self.element.norm()):
            raise DomainError(f"tangent vectors must be traceless, trace = {tr!r}")


# -- gauges -------------------------------------------------------------------


def _compressed(x: Element, y: Element) -> Element:
    """U_{y^{-1/2}} x for interior y."""
    y = _interior(y, "gauge reference")
    return alg.quadratic_rep(alg.power(y, -0.5), x)


def upper_gauge(x: Element, y) -> float:
    """M(x/y) = inf{b : x <= b y} for interior y."""
    return alg.lambda_max(_compressed(x, y))


def lower_gauge(x: Element, y) -> float:
    """m(x/y) = sup{a : a y <= x} for interior y."""
    return alg.lambda_min(_compressed(x, y))


def order_unit_norm(x: Element) -> float:
    return alg.spectral_radius(x)


def variation_seminorm(x: Element) -> float:
    lam = alg.eigenvalues(x)
    return float(lam[0] - lam[-1])


# -- distances -----------------------------------------------------------------


def _log_ratio_spectrum(x, y) -> np.ndarray:
    """Spectrum of log U_{y^{-1/2}} x."""
    x = _interior(x)
    y = _interior(y)
    lam = alg.eigenvalues(alg.quadratic_rep(alg.power(y, -0.5), x))
    if lam[-1] <= 0:
        raise NotInteriorError("relative spectrum is not positive; points are numerically degenerate")
    return np.log(lam)


def thompson_distance(x, y) -> float:
    """||log U_{y^{-1/2}} x||_u for interior x, y."""
    s = _log_ratio_spectrum(x, y)
    return float(max(s[0], -s[-1]))


def hilbert_distance(x, y) -> float:
    """diam sigma(log U_{y^{-1/2}} x); invariant under positive rescaling."""
    s = _log_ratio_spectrum(x, y)
    return float(s[0] - s[-1])


def symmetry(x, y) -> Element:
    """The symmetry S_x(y) = U_x y^{-1} through x."""
    x = _interior(x, "symmetry centre")
    y = _interior(y)
    return alg.quadratic_rep(x, alg.inverse(y))


def project_det_one(x) -> Element:
    x = _interior(x)
    lam = alg.eigenvalues(x)
    # geometric mean computed in log space
    return x / math.exp(float(np.mean(np.log(lam))))


# -- domination and parts ----------------------------------------------------------


def support_idempotent(x) -> Element:
    """Sum of the frame members of x carrying eigenvalues above the support threshold."""
    x = _positive(x)
    dec = alg.spectral_decompose(x)
    lam = dec.eigenvalues
    thr = config.get().support_rel * max(lam[0], 0.0)
    keep = [i for i, v in enumerate(lam) if v > thr and v > 0]
    if not keep:
        return alg.zero(x.algebra)
    return alg.frame_sum(dec.frame, keep)


def dominates(x, y) -> bool:
    """True iff y dominates x, i.e. x <= b y for some b (x, y in the closed cone)."""
    x = _positive(x)
    y = _positive(y)
    q = support_idempotent(y)
    defect = (alg.quadratic_rep(q, x) - x).norm()
    return bool(defect <= 1e3 * config.get().tol * max(1.0, x.norm()))


def same_part_cone(x, y) -> bool:
    x = _positive(x)
    y = _positive(y)
    return bool(alg.allclose(support_idempotent(x), support_idempotent(y), atol=1e3 * config.get().tol))


def peirce_upper_gauge(x: Element, y: Element, p: Element) -> float:
    """M(x/y) computed inside the Peirce subalgebra A(p).

    Both x and y must lie in A(p) with y invertible there.  The gauge is
    evaluated against the ambient interior point y + (u - p), whose inverse
    square root acts on A(p) as the subalgebra inverse square root of y.
    """
    u = alg.unit(y.algebra)
    y_ext = y + (u - p)
    return alg.peirce_lambda_max(p, alg.quadratic_rep(alg.power(_interior(y_ext, "support reference"), -0.5), x))
