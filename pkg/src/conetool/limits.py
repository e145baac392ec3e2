"""Numerical limits of normalised distance functions.

This is the independent check for every closed-form horofunction: given a
path x(t) escaping to infinity, evaluate

    h_{x(t)}(probe) = d(probe, x(t)) - d(u, x(t))

on a schedule of t values and report how the values settle.

Cone distances are evaluated from the order gauges alone,

    d_T(x, p) = max(log M(p/x), log M(x/p)),   d_H(x, p) = log M(p/x) + log M(x/p),

with M(x/p) = M(p^{-1}/x^{-1}) so that only largest eigenvalues are needed.
Paths that know their own inverse (exponential paths) therefore stay accurate
even when the spread of the spectrum is e^{+-40}.

Along cone paths the error decays like e^{-t}.  In the normed spaces (A, |.|_u)
and (T_u, |.|_u) the error decays only like 1/t whenever the probe does not
commute with the frame (second-order eigenvalue perturbation across a gap of
size t), so for those metrics the values are extrapolated to 1/t -> 0 with
Neville's scheme on a doubling schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import algebra as alg
from . import order
from .algebra import Element
from .errors import DomainError

METRICS = ("thompson", "hilbert", "norm", "variation")
CONE_METRICS = ("thompson", "hilbert")

DEFAULT_CONE_SCHEDULE = (10.0, 20.0, 40.0)
DEFAULT_CONVERGENCE_TOL = 1e-8


def doubling_schedule(t0: float, count: int = 8) -> tuple:
    return tuple(float(t0) * 2.0 ** k for k in range(count))


@dataclass(frozen=True, eq=False)
class PathSample:
    """A point of a path; cone paths may also carry inverse and square roots."""

    point: Element
    inverse: Element | None = None
    sqrt: Element | None = None
    inv_sqrt: Element | None = None


class ExpPath:
    """t -> exp(w(t)) for a generator t -> w(t) in the algebra.

    Point, inverse and square roots all come from one spectral decomposition of
    w(t), so none of them is obtained by inverting an ill-conditioned matrix.
    """

    def __init__(self, generator: Callable[[float], Element]):
        self.generator = generator

    def sample(self, t: float) -> PathSample:
        dec = alg.spectral_decompose(self.generator(t))
        lam = dec.eigenvalues
        return PathSample(
            point=dec.reconstruct(np.exp(lam)),
            inverse=dec.reconstruct(np.exp(-lam)),
            sqrt=dec.reconstruct(np.exp(lam / 2)),
            inv_sqrt=dec.reconstruct(np.exp(-lam / 2)),
        )


class LinePath:
    """t -> t * direction + offset, a straight line in a normed space."""

    def __init__(self, direction: Element, offset: Element | None = None):
        self.direction = direction
        self.offset = alg.zero(direction.algebra) if offset is None else offset

    def sample(self, t: float) -> PathSample:
        return PathSample(point=t * self.direction + self.offset)


class SequencePath:
    """A finite sequence x_0, x_1, ... indexed by position."""

    def __init__(self, points: Sequence[Element]):
        if not points:
            raise ValueError("empty sequence")
        self.points = list(points)

    @property
    def schedule(self) -> tuple:
        return tuple(float(i) for i in range(len(self.points)))

    def sample(self, t: float) -> PathSample:
        return PathSample(point=self.points[int(t)])


@dataclass(frozen=True, eq=False)
class ConvergenceTrace:
    """Values of h_{x(t)}(probe) along a schedule.

    ``increments[k] = |values[k] - values[k-1]|`` (NaN for k = 0).  ``estimate``
    is the last value, or the extrapolated limit when ``extrapolated`` is set;
    ``converged`` compares the last increment (or the extrapolation change)
    with the convergence tolerance.
    """

    t: tuple
    values: tuple
    increments: tuple
    radii: tuple
    estimate: float
    converged: bool
    extrapolated: bool = False
    change: float = field(default=math.nan)

    @property
    def divergent(self) -> bool:
        """Whether d(u, x(t)) grows along the schedule (a path to infinity)."""
        r = np.asarray(self.radii)
        return bool(len(r) > 1 and np.all(np.diff(r) >= -1e-12) and r[-1] > r[0] + 1.0)

    def rows(self):
        for k, (t, v, inc) in enumerate(zip(self.t, self.values, self.increments)):
            yield t, v, inc


def neville_at_zero(s: Sequence[float], values: Sequence[float]):
    """Polynomial extrapolation of values(s) to s = 0.

    Returns the estimate and the change between the last two orders.
    """
    s = np.asarray(s, dtype=float)
    table = np.array(values, dtype=float)
    previous = table[-1]
    last_change = math.nan
    for k in range(1, len(table)):
        for i in range(len(table) - 1, k - 1, -1):
            table[i] = table[i] + (table[i] - table[i - 1]) * s[i] / (s[i - k] - s[i])
        last_change = abs(table[-1] - previous)
        previous = table[-1]
    return float(table[-1]), float(last_change)


def _lmax_log(x: Element) -> float:
    lam = alg.lambda_max(x)
    if lam <= 0:
        raise DomainError("gauge of a non-positive element")
    return math.log(lam)


class _Probe:
    """Pre-computed data for evaluating distances from one probe."""

    def __init__(self, x: Element, metric: str):
        self.metric = metric
        if metric in CONE_METRICS:
            x = order._interior(x, "probe")
            if metric == "hilbert":
                x = order.project_det_one(x)
            dec = alg.spectral_decompose(x)
            self.sqrt = dec.reconstruct(np.sqrt(dec.eigenvalues))
            self.inv_sqrt = dec.reconstruct(1.0 / np.sqrt(dec.eigenvalues))
        self.x = x

    def distance(self, s: PathSample) -> float:
        if self.metric == "norm":
            return order.order_unit_norm(self.x - s.point)
        if self.metric == "variation":
            return order.variation_seminorm(self.x - s.point)
        inv = s.inverse if s.inverse is not None else alg.inverse(s.point)
        up = _lmax_log(alg.quadratic_rep(self.inv_sqrt, s.point))
        down = _lmax_log(alg.quadratic_rep(self.sqrt, inv))
        return max(up, down) if self.metric == "thompson" else up + down


def base_distance(s: PathSample, metric: str) -> float:
    """d(b, x) from the basepoint (u for cones, 0 for normed spaces)."""
    if metric == "norm":
        return order.order_unit_norm(s.point)
    if metric == "variation":
        return order.variation_seminorm(s.point)
    inv = s.inverse if s.inverse is not None else alg.inverse(s.point)
    up, down = _lmax_log(s.point), _lmax_log(inv)
    return max(up, down) if metric == "thompson" else up + down


def limit_functional(
    path,
    probes: Sequence[Element],
    metric: str,
    schedule: Sequence[float] | None = None,
    extrapolate: bool | None = None,
    tol: float = DEFAULT_CONVERGENCE_TOL,
) -> list:
    """Approximate lim h_{x(t)}(probe) for every probe; one trace per probe.

    ``path`` is an object with ``sample(t)`` (see :class:`ExpPath`,
    :class:`LinePath`) or a plain sequence of elements.  By default cone
    metrics use the schedule (10, 20, 40) and report the last value, while
    normed metrics use 30 * 2^k, k < 8, and extrapolate in 1/t.
    """
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}")
    if isinstance(path, (list, tuple)):
        path = SequencePath(path)
    if extrapolate is None:
        extrapolate = metric not in CONE_METRICS and not isinstance(path, SequencePath)
    if schedule is None:
        if isinstance(path, SequencePath):
            schedule = path.schedule
        elif metric in CONE_METRICS:
            schedule = DEFAULT_CONE_SCHEDULE
        else:
            schedule = doubling_schedule(30.0)
    schedule = tuple(float(t) for t in schedule)
    if not schedule:
        raise ValueError("empty schedule")
    if extrapolate and (len(schedule) < 2 or min(schedule) <= 0):
        raise ValueError("extrapolation needs at least two positive schedule points")

    samples = [path.sample(t) for t in schedule]
    radii = tuple(base_distance(s, metric) for s in samples)
    traces = []
    for x in probes:
        probe = _Probe(x, metric)
        values = tuple(probe.distance(s) - r for s, r in zip(samples, radii))
        inc = (math.nan,) + tuple(abs(b - a) for a, b in zip(values, values[1:]))
        if extrapolate:
            est, change = neville_at_zero([1.0 / t for t in schedule], values)
        else:
            est, change = values[-1], inc[-1]
        converged = bool(change < tol) if not math.isnan(change) else False
        traces.append(ConvergenceTrace(schedule, values, inc, radii, est, converged, extrapolate, change))
    return traces
