"""One test per acceptance criterion, at the stated trial counts and tolerances.

Each test records a one-line summary; the PASS/FAIL lines are printed in the
terminal summary of the run.
"""

import subprocess
import sys

import numpy as np
import pytest

from conetool import algebra as alg
from conetool import hilbert as hb
from conetool import sampling as smp
from conetool import suites
from conetool import thompson as th
from conetool.limits import limit_functional

from oracles import pauli

KINDS = ("sym", "herm", "spin")


def _run(name, trials, tol, kinds=KINDS, seed=0):
    """One report per algebra kind, or a single report cycling all algebras when kinds is None."""
    if kinds is None:
        report = suites.run_suite(name, trials=trials, seed=seed, tol=tol)
        report.label = "all"
        return [report]
    out = []
    for k in kinds:
        report = suites.run_suite(name, trials=trials, seed=seed, tol=tol, algebras=suites.parse_algebras(k))
        report.label = k
        out.append(report)
    return out


def _summary(reports):
    return "; ".join(f"{r.suite}[{r.label}] max {r.max_violation:.2e}/{r.tolerance:g} over {r.trials}" for r in reports)


def _check(reports):
    bad = [f"{r.suite}: {r.failures[:3]}" for r in reports if not r.passed]
    assert not bad, bad


def test_criterion_1_kernel(record):
    reports = []
    for name in ("jordan-identity", "spectral-reconstruction"):
        reports += _run(name, 200, 1e-10)
    reports += _run("quadratic-rep-matrix", 200, 1e-10, kinds=("sym", "herm"))
    # spin factors: U_x y against x y x after the Pauli embedding of spin(3), spin(4)
    rng = np.random.default_rng(1)
    worst = 0.0
    for k in range(200):
        a = alg.spin_factor(3 + k % 2)
        x, y = smp.random_element(rng, a), smp.random_element(rng, a)
        px, py = pauli(x), pauli(y)
        err = np.linalg.norm(pauli(alg.quadratic_rep(x, y)) - px @ py @ px) / (x.norm() ** 2 * y.norm())
        worst = max(worst, float(err))
    record(1, "kernel correctness", _summary(reports) + f"; spin U_x vs Pauli xyx max {worst:.2e}/1e-10 over 200")
    _check(reports)
    assert worst <= 1e-10


def test_criterion_2_exp_isometry(record):
    reports = _run("exp-isometry", 200, 1e-10)
    record(2, "exp is an isometry on flats", _summary(reports))
    _check(reports)


def test_criterion_3_isometry_group(record):
    reports = []
    for name in ("symmetry-isometry", "automorphism-invariance", "inversion-identity"):
        reports += _run(name, 500, 1e-9, kinds=None)
    record(3, "isometry group", _summary(reports))
    _check(reports)


def test_criterion_4_thompson_horofunctions(record):
    reports = _run("horofunction-limit", 100, 1e-7, kinds=None) + _run("scaling-limits", 100, 1e-8, kinds=None)
    record(4, "Thompson horofunction closed form", _summary(reports))
    _check(reports)


def test_criterion_5_thompson_detour(record):
    reports = _run("detour-consistency", 100, 1e-7, kinds=None) + _run("detour-parts", 50, 0.0, kinds=None)
    rng = np.random.default_rng(5)
    nonzero = 0
    for k in range(50):
        a = smp.default_algebras()[k % 10]
        p = smp.random_params(rng, a)
        pair = th.params_to_pair(p)
        copy = th.HoroPair(alg.Element(a, pair.y.coords.copy()), alg.Element(a, pair.z.coords.copy()))
        nonzero += th.detour_distance_thompson(pair, pair) != 0.0
        nonzero += th.detour_distance_thompson(pair, copy) != 0.0
        nonzero += th.detour_distance_thompson(p, p) != 0.0
    record(5, "Thompson detour distance", _summary(reports) + f"; delta(h, h) != 0 in {nonzero}/150")
    _check(reports)
    assert nonzero == 0


def test_criterion_6_worked_value(record):
    g = hb.VariationHorofunction(th.BoundaryParams(smp.canonical_frame(alg.real_symmetric(2)), [1], [2], {1: 0, 2: 0}, "hilbert"))
    value = g(alg.diag([1.0, -1.0]))
    record(6, "variation horofunction worked value", f"g(diag(1, -1)) = {value!r}, error {abs(value + 2):.1e}/1e-12")
    assert abs(value + 2.0) <= 1e-12


@pytest.mark.xfail(strict=True, reason="the straight-line oracle converges like 1/t; see the study in test_criterion_6_rate")
def test_criterion_6_limit_oracle(record):
    pool = smp.default_algebras()
    raw, extrapolated = [], []
    for k in range(200):
        rng = np.random.default_rng(suites.trial_seed(0, "criterion-6", k))
        a = pool[k % len(pool)]
        g = hb.VariationHorofunction(smp.random_params(rng, a, "hilbert"))
        v = smp.random_traceless(rng, a, 2.0)
        exact = g(v)
        at30 = limit_functional(hb.VariationPath(g), [v], "variation", schedule=(30.0,), extrapolate=False)[0]
        ext = limit_functional(hb.VariationPath(g), [v], "variation")[0]
        raw.append(abs(at30.estimate - exact))
        extrapolated.append(abs(ext.estimate - exact))
    raw = np.asarray(raw)
    record(6, "variation horofunction vs xi^t oracle at t = 30",
           f"raw max {raw.max():.2e}, median {np.median(raw):.2e}, {int(np.sum(raw <= 1e-7))}/200 within 1e-7; "
           f"extrapolated from t = 30 max {max(extrapolated):.2e}")
    assert raw.max() <= 1e-7


def test_criterion_6_rate(record):
    """The raw error halves when t doubles, and extrapolation from t = 30 recovers the closed form."""
    pool = smp.default_algebras()
    ratios, extrapolated = [], []
    for k in range(50):
        rng = np.random.default_rng(suites.trial_seed(1, "criterion-6-rate", k))
        a = pool[k % len(pool)]
        g = hb.VariationHorofunction(smp.random_params(rng, a, "hilbert"))
        v = smp.random_traceless(rng, a, 2.0)
        exact = g(v)
        tr = limit_functional(hb.VariationPath(g), [v], "variation", schedule=(240.0, 480.0, 960.0), extrapolate=False)[0]
        err = np.abs(np.asarray(tr.values) - exact)
        if err[0] > 1e-6:
            ratios += list(err[1:] / err[:-1])
        extrapolated.append(abs(limit_functional(hb.VariationPath(g), [v], "variation")[0].estimate - exact))
    ratios = np.asarray(ratios)
    record(6, "first-order convergence of the xi^t oracle",
           f"error ratio per doubling in [{ratios.min():.3f}, {ratios.max():.3f}]; extrapolated max {max(extrapolated):.2e}/1e-7")
    assert np.all(np.abs(ratios - 0.5) < 0.05)
    assert max(extrapolated) <= 1e-7


def test_criterion_7_variation_detour(record):
    reports = _run("variation-detour-consistency", 100, 1e-7, kinds=None) + _run("variation-detour-parts", 50, 0.0, kinds=None)
    record(7, "variation detour distance", _summary(reports))
    _check(reports)


def test_criterion_8_continuity(record):
    reports = (_run("extension-continuity-thompson", 50, 1e-6, kinds=None)
               + _run("extension-continuity-hilbert", 50, 1e-6, kinds=None)
               + _run("well-definedness", 20, 1e-9, kinds=None))
    record(8, "extension continuity and well-definedness", _summary(reports))
    _check(reports)


def test_criterion_9_hygiene(record):
    reports = _run("horofunction-lipschitz", 300, 1e-9, kinds=None) + _run("horofunction-basepoint", 300, 1e-12, kinds=None)
    record(9, "horofunction hygiene", _summary(reports))
    _check(reports)


def test_criterion_10_cli_reproducible(record, tmp_path):
    cmd = [sys.executable, "-m", "conetool.cli", "verify", "--suite", "all", "--seed", "42"]
    procs = [subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE, cwd=tmp_path) for _ in range(2)]
    outs = [p.communicate(timeout=280) for p in procs]
    codes = [p.returncode for p in procs]
    same = outs[0][0] == outs[1][0]
    record(10, "CLI reproducibility", f"exit codes {codes}, outputs byte-identical: {same}, {len(outs[0][0])} bytes")
    assert codes == [0, 0], outs[0][1].decode()[-2000:]
    assert same and outs[0][0]
