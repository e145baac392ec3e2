"""Randomised property suites behind the verification harness.

Every suite checks one invariant.  A trial draws its own generator from
``SeedSequence([seed, crc32(name), trial])`` and an algebra from the cycle
of test algebras, and returns a violation magnitude that is compared with
the suite tolerance.  Reports are therefore deterministic for a given seed,
whatever order the trials run in.
"""

from __future__ import annotations

import math
import time
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from . import algebra as alg
from . import hilbert as hb
from . import order
from . import sampling as smp
from . import thompson as th
from .algebra import AlgebraDescriptor
from .limits import ExpPath, limit_functional

MATRIX_KINDS = ("sym", "herm")
ALL_KINDS = ("sym", "herm", "spin")
TRACE_LIMIT = 10  # trials per suite that write convergence traces


@dataclass
class Outcome:
    violation: float
    description: str = ""
    trace: object = None


@dataclass(frozen=True)
class Suite:
    name: str
    module: str
    invariant: str
    tolerance: float
    trials: int
    run: Callable
    kinds: tuple = ALL_KINDS


@dataclass
class SuiteReport:
    suite: str
    trials: int
    failures: list
    max_violation: float
    tolerance: float
    passed: bool
    module: str = ""
    elapsed: float | None = None

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "module": self.module,
            "trials": self.trials,
            "failures": [{"seed": s, "description": d, "magnitude": _finite(m)} for s, d, m in self.failures],
            "max_violation": _finite(self.max_violation),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if timing and self.elapsed is not None:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def _finite(v: float):
    return v if math.isfinite(v) else ("inf" if v > 0 else "nan")


REGISTRY: dict = {}


def suite(name, module, invariant, tolerance, trials=200, kinds=ALL_KINDS):
    def register(fn):
        REGISTRY[name] = Suite(name, module, invariant, tolerance, trials, fn, tuple(kinds))
        return fn

    return register


def _rel(err: float, scale: float) -> float:
    return float(err) / max(1.0, float(scale))


# -- algebra kernel -------------------------------------------------------------


@suite("jordan-identity", "algebra_kernel", "x^2 o (x o y) = x o (x^2 o y)", 1e-10)
def _jordan_identity(rng, a):
    x, y = smp.random_element(rng, a), smp.random_element(rng, a)
    x2 = alg.square(x)
    err = (alg.jordan_product(x2, alg.jordan_product(x, y)) - alg.jordan_product(x, alg.jordan_product(x2, y))).norm()
    return Outcome(_rel(err, x.norm() ** 3 * y.norm()))


@suite("spectral-reconstruction", "algebra_kernel", "sum lambda_i p_i = x, sum p_i = u, frame orthogonality", 1e-10)
def _spectral_reconstruction(rng, a):
    x = smp.random_element(rng, a)
    dec = alg.spectral_decompose(x)
    u = alg.unit(a)
    fr = dec.frame
    recon = sum((lam * p.coords for lam, p in zip(dec.eigenvalues, fr)), np.zeros(a.shape, dtype=a.dtype))
    errs = {
        "reconstruction": _rel(np.linalg.norm(recon - x.coords), x.norm()),
        "partition": (alg.frame_sum(fr, range(len(fr))) - u).norm(),
        "idempotent": max((alg.square(p) - p).norm() for p in fr),
        "trace": max(abs(alg.trace(p) - 1.0) for p in fr),
        "orthogonality": max((alg.jordan_product(p, q).norm() for i, p in enumerate(fr) for q in fr[i + 1:]), default=0.0),
        "order": float(max(0.0, np.max(np.diff(dec.eigenvalues), initial=0.0))),
    }
    worst = max(errs, key=errs.get)
    return Outcome(errs[worst], worst)


@suite("quadratic-rep-matrix", "algebra_kernel", "U_x y = x y x on matrix algebras", 1e-12, kinds=MATRIX_KINDS)
def _quadratic_rep_matrix(rng, a):
    x, y = smp.random_element(rng, a), smp.random_element(rng, a)
    jordan_route = 2.0 * alg.jordan_product(x, alg.jordan_product(x, y)) - alg.jordan_product(alg.square(x), y)
    err = (alg.quadratic_rep(x, y) - jordan_route).norm()
    return Outcome(_rel(err, x.norm() ** 2 * y.norm()))


@suite("cone-invertibility", "algebra_kernel", "U_x maps the open cone into itself", 0.0)
def _cone_invertibility(rng, a):
    x, c = smp.random_interior(rng, a), smp.random_interior(rng, a)
    lam = alg.eigenvalues(alg.quadratic_rep(x, c))
    return Outcome(0.0 if lam[-1] > 0 else 1.0 + abs(lam[-1]), f"min eigenvalue {lam[-1]:.3e}")


@suite("det-quadratic", "algebra_kernel", "det(U_x y^-1) = det(x)^2 / det(y)", 1e-9)
def _det_quadratic(rng, a):
    x, y = smp.random_interior(rng, a), smp.random_interior(rng, a)
    lhs = alg.determinant(alg.quadratic_rep(x, alg.inverse(y)))
    rhs = alg.determinant(x) ** 2 / alg.determinant(y)
    return Outcome(abs(lhs - rhs) / abs(rhs))


@suite("lambda-shift", "algebra_kernel", "Lambda(x + mu u) = Lambda(x) + mu", 1e-12, trials=100)
def _lambda_shift(rng, a):
    x = smp.random_element(rng, a)
    mu = float(rng.uniform(-5, 5))
    lhs = alg.lambda_max(x + mu * alg.unit(a))
    rhs = alg.lambda_max(x) + mu
    return Outcome(_rel(abs(lhs - rhs), abs(rhs) + abs(mu)))


def _compressed_lambda_max(p, z) -> float:
    """Subspace-compression oracle: eigenvalues of B* Z B on range(p)."""
    a = p.algebra
    if a.is_matrix:
        w, V = np.linalg.eigh(p.coords)
        B = V[:, w > 0.5]
        return float(np.linalg.eigvalsh(B.conj().T @ z.coords @ B)[-1])
    if alg.trace(p) > 1.5:
        return alg.lambda_max(z)
    return alg.inner_product(z, p) / alg.inner_product(p, p)


@suite("peirce-shift", "algebra_kernel", "Lambda_A(p)(z) by the ambient shift agrees with compression", 1e-10)
def _peirce_shift(rng, a):
    frame = smp.random_frame(rng, a)
    idx = [k for k in range(a.rank) if rng.random() < 0.5] or [int(rng.integers(a.rank))]
    p = alg.frame_sum(frame, idx)
    z = alg.peirce_project(p, smp.random_element(rng, a, scale=3.0))
    err = abs(alg.peirce_lambda_max(p, z) - _compressed_lambda_max(p, z))
    return Outcome(_rel(err, z.norm()), f"|I| = {len(idx)}")


# -- cone order -----------------------------------------------------------------

_DISTANCES = (("thompson", order.thompson_distance), ("hilbert", order.hilbert_distance))


@suite("triangle-inequality", "cone_order", "d_T and d_H satisfy the triangle inequality", 1e-9, trials=500)
def _triangle(rng, a):
    x, y, z = (smp.random_interior(rng, a) for _ in range(3))
    viol = {name: d(x, z) - d(x, y) - d(y, z) for name, d in _DISTANCES}
    name = max(viol, key=viol.get)
    return Outcome(max(0.0, viol[name]), name)


@suite("gauge-log", "cone_order", "log M(x/y) = Lambda(log U_{y^-1/2} x)", 1e-9)
def _gauge_log(rng, a):
    x, y = smp.random_interior(rng, a), smp.random_interior(rng, a)
    via_log = alg.lambda_max(alg.log(alg.quadratic_rep(alg.power(y, -0.5), x)))
    return Outcome(abs(math.log(order.upper_gauge(x, y)) - via_log))


@suite("inversion-identity", "cone_order", "M(x^-1 / y^-1) = M(y/x)", 1e-9)
def _inversion(rng, a):
    x, y = smp.random_interior(rng, a), smp.random_interior(rng, a)
    lhs = order.upper_gauge(alg.inverse(x), alg.inverse(y))
    rhs = order.upper_gauge(y, x)
    return Outcome(abs(lhs - rhs) / rhs)


@suite("automorphism-invariance", "cone_order", "d(U_a x, U_a y) = d(x, y) for invertible a", 1e-9)
def _automorphism(rng, a):
    x, y = smp.random_interior(rng, a), smp.random_interior(rng, a)
    g = smp.random_invertible(rng, a)
    viol = {name: abs(d(alg.quadratic_rep(g, x), alg.quadratic_rep(g, y)) - d(x, y)) for name, d in _DISTANCES}
    name = max(viol, key=viol.get)
    return Outcome(viol[name], name)


@suite("symmetry-isometry", "cone_order", "S_w preserves d_T and d_H and is an involution", 1e-9, trials=500)
def _symmetry(rng, a):
    w, x, y = (smp.random_interior(rng, a) for _ in range(3))
    sx, sy = order.symmetry(w, x), order.symmetry(w, y)
    viol = {name: abs(d(sx, sy) - d(x, y)) for name, d in _DISTANCES}
    viol["involution"] = _rel((order.symmetry(w, sx) - x).norm(), x.norm())
    name = max(viol, key=viol.get)
    return Outcome(viol[name], name)


@suite("hilbert-gauge-sum", "cone_order", "d_H(x, y) = log M(x/y) + log M(y/x)", 1e-9)
def _hilbert_sum(rng, a):
    x, y = smp.random_interior(rng, a), smp.random_interior(rng, a)
    gauges = math.log(order.upper_gauge(x, y)) + math.log(order.upper_gauge(y, x))
    return Outcome(abs(order.hilbert_distance(x, y) - gauges))


# -- Thompson boundary ---------------------------------------------------------------


@suite("exp-isometry", "thompson_boundary", "exp is a d_T isometry on the span of a frame", 1e-10)
def _exp_isometry(rng, a):
    frame = smp.random_frame(rng, a)
    y, z = smp.random_span_element(rng, frame, 2.0), smp.random_span_element(rng, frame, 2.0)
    return Outcome(abs(order.thompson_distance(alg.exp(y), alg.exp(z)) - order.order_unit_norm(y - z)))


@suite("horofunction-lower-bound", "thompson_boundary", "h(x) >= -d_T(x, u)", 1e-12)
def _lower_bound(rng, a):
    pair = th.params_to_pair(smp.random_params(rng, a))
    x = smp.random_interior(rng, a, 2.0)
    return Outcome(max(0.0, -order.thompson_distance(x, alg.unit(a)) - th.eval_thompson_horofunction(pair, x)))


def _functionals(rng, a):
    """(label, f, distance, sampler) for every kind of functional on ``a``."""
    u = alg.unit(a)
    pair = th.params_to_pair(smp.random_params(rng, a))
    normp = smp.random_params(rng, a)
    interior = smp.random_interior(rng, a, 2.0)
    out = [
        ("thompson", pair, order.thompson_distance, lambda: smp.random_interior(rng, a)),
        ("norm", lambda v: th.eval_norm_horofunction(normp, v), lambda v, w: order.order_unit_norm(v - w),
         lambda: smp.random_element(rng, a, 2.0)),
        ("interior-thompson", th.MetricFunctional(point=interior), order.thompson_distance,
         lambda: smp.random_interior(rng, a)),
        ("interior-hilbert", th.MetricFunctional(point=interior, metric="hilbert"), order.hilbert_distance,
         lambda: smp.random_interior(rng, a)),
    ]
    varp = smp.random_params(rng, a, "hilbert")
    hpair = hb.exp_extension_hilbert(varp)
    out += [
        ("variation", hb.VariationHorofunction(varp), lambda v, w: order.variation_seminorm(v - w),
         lambda: smp.random_traceless(rng, a, 2.0)),
        ("hilbert", hpair, order.hilbert_distance, lambda: order.project_det_one(smp.random_interior(rng, a))),
    ]
    zero = {"norm": alg.zero(a), "variation": alg.zero(a)}
    return [(label, f, d, draw, zero.get(label, u)) for label, f, d, draw in out]


@suite("horofunction-lipschitz", "thompson_boundary", "every functional is 1-Lipschitz for its metric", 1e-9, trials=300)
def _lipschitz(rng, a):
    worst, label = 0.0, ""
    for name, f, d, draw, _ in _functionals(rng, a):
        x, xp = draw(), draw()
        excess = abs(f(x) - f(xp)) - d(x, xp)
        if excess > worst:
            worst, label = excess, name
    return Outcome(worst, label)


@suite("horofunction-basepoint", "thompson_boundary", "every functional vanishes at the basepoint", 1e-12, trials=300)
def _basepoint(rng, a):
    vals = {name: abs(f(base)) for name, f, _, _, base in _functionals(rng, a)}
    name = max(vals, key=vals.get)
    return Outcome(vals[name], name)


@suite("horofunction-limit", "thompson_boundary", "closed-form h equals the limit along psi(t) at t = 40", 1e-7, trials=100)
def _horofunction_limit(rng, a):
    params = smp.random_params(rng, a)
    pair = th.params_to_pair(params)
    probes = [smp.random_interior(rng, a) for _ in range(10)]
    traces = limit_functional(th.BusemannPath(params), probes, "thompson", schedule=(10.0, 20.0, 40.0))
    errs = [abs(tr.estimate - pair(x)) for tr, x in zip(traces, probes)]
    k = int(np.argmax(errs))
    return Outcome(errs[k], f"probe {k}", traces[k])


@suite("busemann-convergence", "thompson_boundary", "|h_psi(t)(x) - h(x)| <= 5 C e^-t for t >= 20, monotone increments", 0.0)
def _busemann_convergence(rng, a):
    params = smp.random_params(rng, a)
    pair = th.params_to_pair(params)
    x = smp.random_interior(rng, a)
    ts = tuple(float(t) for t in range(2, 32, 2))
    tr = limit_functional(th.BusemannPath(params), [x], "thompson", schedule=ts)[0]
    err = np.abs(np.asarray(tr.values) - pair(x))
    t = np.asarray(ts)
    fit = t <= 10
    c = float(np.max(err[fit] * np.exp(t[fit])))
    floor = 1e-12
    late = t >= 20
    bound_excess = float(np.max(err[late] - 5.0 * c * np.exp(-t[late]) - floor))
    inc = np.asarray(tr.increments[1:])
    monotone_excess = float(np.max(np.diff(inc) - floor, initial=-1.0))
    return Outcome(max(0.0, bound_excess, monotone_excess), f"C = {c:.3e}", tr)


@suite("scaling-limits", "thompson_boundary", "e^-t psi(t) -> y and e^-t psi(t)^-1 -> z at t = 25", 1e-8)
def _scaling_limits(rng, a):
    params = smp.random_params(rng, a)
    _, _, dy, dz = th.geodesic_rows(params, [25.0])[0]
    return Outcome(max(dy, dz))


@suite("detour-consistency", "thompson_boundary", "detour closed form equals the limit formula at t = 30", 1e-7, trials=100)
def _detour_consistency(rng, a):
    pp = smp.same_part_pair(rng, a)
    closed = th.detour_distance_thompson(th.params_to_pair(pp.h_rot), th.params_to_pair(pp.hp_rot))
    limit = th.detour_limit_thompson(pp.h, pp.hp, 30.0)
    return Outcome(abs(closed - limit), f"delta = {closed:.6g}")


@suite("detour-parts", "thompson_boundary", "delta = +inf on support mismatch and delta(h, h) = 0", 0.0, trials=50)
def _detour_parts(rng, a):
    pp = smp.mismatch_pair(rng, a)
    h, hp = th.params_to_pair(pp.h_rot), th.params_to_pair(pp.hp_rot)
    bad = []
    if th.detour_distance_thompson(h, hp) != math.inf:
        bad.append("finite on mismatch")
    if th.same_part_thompson(h, hp):
        bad.append("same part on mismatch")
    if th.detour_distance_thompson(h, h) != 0.0:
        bad.append("delta(h, h) != 0")
    return Outcome(float(len(bad)), "; ".join(bad))


@suite("detour-metric", "thompson_boundary", "delta is symmetric and satisfies the triangle inequality on a part", 1e-9)
def _detour_metric(rng, a):
    h, hp, hq = (th.params_to_pair(p) for p in smp.same_part_family(rng, a, count=3))
    d = th.detour_distance_thompson
    asym = 0.0 if d(h, hp) == d(hp, h) else 1.0
    excess = max(0.0, d(h, hq) - d(h, hp) - d(hp, hq))
    return Outcome(max(asym, excess), "asymmetric" if asym else "")


def _continuity(rng, a, metric):
    """h_{exp(w_n)} against the extension's closed form for w_n on a Busemann path."""
    mode = "thompson" if metric == "thompson" else "hilbert"
    params = smp.random_params(rng, a, mode)
    if metric == "thompson":
        w = lambda t: t * params.omega + params.zeta
        h = th.exp_extension_thompson(params)
        probes = [smp.random_interior(rng, a) for _ in range(5)]
    else:
        w = lambda t: hb.busemann_path_variation(params, t)
        h = hb.exp_extension_hilbert(params)
        probes = [order.project_det_one(smp.random_interior(rng, a)) for _ in range(5)]
    traces = limit_functional(ExpPath(w), probes, metric, schedule=tuple(float(n) for n in range(1, 31)))
    errs = [max(tr.increments[-1], abs(tr.values[-1] - h(x))) for tr, x in zip(traces, probes)]
    k = int(np.argmax(errs))
    return Outcome(errs[k], f"probe {k}", traces[k])


@suite("extension-continuity-thompson", "thompson_boundary", "h_exp(w_n) -> exp(g) pointwise, increments < 1e-6 at n = 30", 1e-6, trials=50)
def _continuity_thompson(rng, a):
    return _continuity(rng, a, "thompson")


# -- Hilbert boundary ------------------------------------------------------------


@suite("variation-convergence", "hilbert_boundary", "g_xi^t(v) -> g(v), extrapolated from t = 30", 1e-7)
def _variation_convergence(rng, a):
    params = smp.random_params(rng, a, "hilbert")
    g = hb.VariationHorofunction(params)
    v = smp.random_traceless(rng, a, 2.0)
    tr = limit_functional(hb.VariationPath(g), [v], "variation")[0]
    inc = np.asarray(tr.increments[1:])
    monotone_excess = float(np.max(np.diff(inc) - 1e-12, initial=0.0))
    return Outcome(max(abs(tr.estimate - g(v)), monotone_excess), f"raw error at t = 30: {abs(tr.values[0] - g(v)):.2e}", tr)


@suite("variation-detour-consistency", "hilbert_boundary", "variation detour closed form equals the limit formula at t = 30", 1e-7, trials=100)
def _variation_detour(rng, a):
    pp = smp.same_part_pair(rng, a, "hilbert")
    closed = hb.detour_distance_variation(pp.h_rot, pp.hp_rot)
    limit = hb.detour_limit_variation(pp.h, pp.hp, 30.0)
    return Outcome(abs(closed - limit), f"delta = {closed:.6g}")


@suite("variation-detour-parts", "hilbert_boundary", "variation delta = +inf iff the supports differ", 0.0, trials=50)
def _variation_parts(rng, a):
    pp = smp.mismatch_pair(rng, a, "hilbert")
    bad = []
    if hb.detour_distance_variation(pp.h_rot, pp.hp_rot) != math.inf:
        bad.append("finite on mismatch")
    if hb.same_part_variation(pp.h_rot, pp.hp_rot):
        bad.append("same part on mismatch")
    if hb.detour_distance_variation(pp.h_rot, pp.h_rot) != 0.0:
        bad.append("delta(g, g) != 0")
    return Outcome(float(len(bad)), "; ".join(bad))


@suite("variation-lower-bound", "hilbert_boundary", "g(v) >= -|v|_u", 1e-12)
def _variation_lower(rng, a):
    g = hb.VariationHorofunction(smp.random_params(rng, a, "hilbert"))
    v = smp.random_traceless(rng, a, 2.0)
    return Outcome(max(0.0, -order.variation_seminorm(v) - g(v)))


@suite("hilbert-rescaling", "hilbert_boundary", "h(project(lambda x)) = h(project(x))", 1e-12)
def _hilbert_rescaling(rng, a):
    h = hb.exp_extension_hilbert(smp.random_params(rng, a, "hilbert"))
    x = smp.random_interior(rng, a)
    lam = float(np.exp(rng.uniform(-3, 3)))
    return Outcome(abs(h(order.project_det_one(lam * x)) - h(order.project_det_one(x))), f"lambda = {lam:.4g}")


@suite("extension-continuity-hilbert", "hilbert_boundary", "h_exp(xi^n) -> exp(g) pointwise on det 1, increments < 1e-6 at n = 30", 1e-6, trials=50)
def _continuity_hilbert(rng, a):
    return _continuity(rng, a, "hilbert")


@suite("well-definedness", "hilbert_boundary", "presentations on different eigenbases give the same pair", 1e-9, trials=20)
def _well_defined(rng, a):
    mode = "hilbert" if a.is_matrix and a.rank >= 3 and rng.random() < 0.5 else "thompson"
    p1, p2 = smp.repeated_eigenvalue_presentations(rng, a, mode)
    q1, q2 = th.params_to_pair(p1), th.params_to_pair(p2)
    err = max(np.max(np.abs(q1.y.coords - q2.y.coords)), np.max(np.abs(q1.z.coords - q2.z.coords)))
    if mode == "thompson":
        v = smp.random_element(rng, a)
        err = max(err, abs(th.eval_norm_horofunction(p1, v) - th.eval_norm_horofunction(p2, v)))
    else:
        v = smp.random_traceless(rng, a)
        err = max(err, abs(hb.eval_variation_horofunction(p1, v) - hb.eval_variation_horofunction(p2, v)))
    return Outcome(float(err), mode)


# -- running -----------------------------------------------------------------------


def parse_algebras(text: str | None) -> list:
    """"sym", "herm:3", "sym:2,spin:6" -> algebra descriptors; None -> the default set."""
    if not text:
        return smp.default_algebras()
    out = []
    for token in text.split(","):
        token = token.strip()
        kind, _, size = token.partition(":")
        if kind not in ALL_KINDS:
            raise ValueError(f"unknown algebra kind {kind!r}")
        if size:
            out.append(AlgebraDescriptor(kind, int(size)))
        else:
            out.extend(smp.default_algebras((kind,)))
    return out


def trial_seed(seed: int, name: str, trial: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(seed), zlib.crc32(name.encode()), int(trial)])


def run_suite(name: str, trials: int | None = None, seed: int = 0, tol: float | None = None,
              algebras=None, trace_dir=None) -> SuiteReport:
    s = REGISTRY[name]
    trials = s.trials if trials is None else int(trials)
    tol = s.tolerance if tol is None else float(tol)
    pool = [a for a in (algebras or smp.default_algebras()) if a.kind in s.kinds]
    start = time.perf_counter()
    failures, worst = [], 0.0
    if pool:
        for k in range(trials):
            ss = trial_seed(seed, name, k)
            a = pool[k % len(pool)]
            try:
                out = s.run(np.random.default_rng(ss), a)
            except Exception as exc:  # a crash inside a trial is a failure, not an abort
                out = Outcome(math.inf, f"{type(exc).__name__}: {exc}")
            mag = float(out.violation)
            if not mag <= tol:
                failures.append((int(ss.generate_state(1)[0]), f"trial {k} on {a}: {out.description}".rstrip(": "), mag))
            worst = max(worst, mag) if not math.isnan(mag) else math.inf
            if trace_dir is not None and out.trace is not None and k < TRACE_LIMIT:
                write_trace(Path(trace_dir) / f"{name}_{k:03d}.csv", out.trace)
    else:
        trials = 0
    return SuiteReport(name, trials, failures, worst, tol, not failures, s.module, time.perf_counter() - start)


def write_trace(path, trace) -> None:
    from .io import write_csv

    write_csv(path, ["t", "value", "increment"], trace.rows())


def run_suites(names, **kwargs) -> list:
    if names == "all" or names == ["all"]:
        names = list(REGISTRY)
    return [run_suite(n, **kwargs) for n in names]
