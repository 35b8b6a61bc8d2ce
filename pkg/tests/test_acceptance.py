"""The eleven acceptance criteria, one test each.

Every test records a one-line verdict (printed in the terminal summary and
to stdout) before asserting.  Wall-clock budgets are checked against the
serial single-process runtime of the suites involved.
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE, disk_points
from tentops.funcmodel import AnalyticFn, derivative, integrate_n, product
from tentops.harness.report import dumps
from tentops.harness.suites import run_verify
from tentops.operators import apply_S, apply_T
from tentops.quadrature import (CarlesonBox, QuadratureSpec, WeightedIntegrand, disk_integral,
                                monte_carlo_integral, region_integral)

pytestmark = pytest.mark.slow


def record(n, title, passed, detail):
    ACCEPTANCE[n] = (title, bool(passed), detail)
    print(f"criterion {n:2d} {'PASS' if passed else 'FAIL'}  {title}  ({detail})")
    assert passed, detail


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def suites(*ids):
    reports, total = {}, 0.0
    for i in ids:
        reports[i], dt = timed(run_verify, i)
        total += dt
    return reports, total


def failed_checks(reports, pred=lambda name: True):
    bad = []
    for rid, rep in reports.items():
        bad += [c["name"] for c in rep["checks"] if pred(c["name"]) and not c["passed"]]
        bad += [f"{rid} error: {e['case']}" for e in rep["errors"]]
    return bad


def summary(bad, elapsed, budget):
    head = "ok" if not bad else f"{len(bad)} failing: {'; '.join(bad[:3])}"
    return f"{head}; {elapsed:.1f}s of {budget}s"


@pytest.fixture(scope="session")
def th1():
    return timed(run_verify, "th1")


@pytest.fixture(scope="session")
def th3():
    return timed(run_verify, "th3")


FS = [AnalyticFn.kernel(0.3, 1.0), AnalyticFn.kernel(-0.5j, 2.5, 2 - 1j),
      AnalyticFn.log(0.6 * np.exp(1j)), AnalyticFn.poly([1, -2, 0.5j, 3]),
      AnalyticFn.kernel(0.7, 1.5) + AnalyticFn.log(-0.4) + AnalyticFn.poly([0, 1])]


def _rel(a, b):
    return float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(b))))


def test_criterion_01_exact_algebra():
    t0 = time.perf_counter()
    z = disk_points(np.random.default_rng(1), 200, 0.7)
    worst = {}
    for f in FS:
        for n in (1, 2, 3):
            back = derivative(integrate_n(f, n), n).taylor(256)
            worst["integrate"] = max(worst.get("integrate", 0), _rel(back, f.taylor(256)))
        for g in FS:
            worst["product"] = max(worst.get("product", 0), _rel(product(f, g)(z), f(z) * g(z)))
            for n, k in ((1, 0), (2, 1), (3, 1)):
                img = apply_T(f, g, n, k)
                want = derivative(f, k)(z) * derivative(g, n - k)(z)
                worst["T identity"] = max(worst.get("T identity", 0),
                                          _rel(derivative(img, n)(z), want))
                worst["jet"] = max(worst.get("jet", 0), float(np.max(np.abs(img.jet(n)))))
                if k >= 1:
                    worst["duality"] = max(worst.get("duality", 0),
                                           _rel(apply_S(f, g, n, k).taylor(256),
                                                apply_T(f, g, n, n - k).taylor(256)))
    # closed-form derivative of a kernel atom: d/dz c(1-az)^-s = c s a (1-az)^-(s+1)
    a, s, c = 0.6 - 0.2j, 1.7, 1.5
    d = derivative(AnalyticFn.kernel(a, s, c), 1)(z)
    worst["derivative"] = _rel(d, c * s * np.conj(a) * (1 - np.conj(a) * z) ** -(s + 1))
    elapsed = time.perf_counter() - t0
    ok = max(worst.values()) <= 1e-10 and elapsed < 5
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f"; {elapsed:.1f}s of 5s"
    record(1, "exact algebra identities at 1e-10", ok, detail)


def test_criterion_02_quadrature_calibration():
    t0 = time.perf_counter()
    spec = QuadratureSpec()
    cal = max(abs(disk_integral(WeightedIntegrand(lambda z: np.ones(np.shape(z)), g), spec).value
                  * (g + 1) - 1) for g in (-0.5, 0.0, 1.0, 2.5))
    F = WeightedIntegrand(lambda z: 1 / np.abs(1 - z), 0.0, (0.0,))
    mc, _ = monte_carlo_integral(F.density, 0.0, 1_000_000, seed=3)
    mc1 = abs(disk_integral(F, spec).value / mc - 1)
    box = CarlesonBox(0.7 * np.exp(1j))
    G = WeightedIntegrand(lambda z: np.abs(1 + 0.5 * z) ** 2, 0.5)
    mcb, _ = monte_carlo_integral(lambda z: G.density(z) * box.contains(z), 0.5, 1_000_000, seed=11)
    mc2 = abs(region_integral(G, box, spec).value / mcb - 1)
    elapsed = time.perf_counter() - t0
    ok = cal <= 1e-6 and max(mc1, mc2) <= 0.01 and elapsed < 30
    record(2, "quadrature calibration and Monte-Carlo cross-checks", ok,
           f"calibration {cal:.1e}, MC {mc1:.2%} / {mc2:.2%}; {elapsed:.1f}s of 30s")


def test_criterion_03_littlewood_paley():
    reports, dt = suites("lp")
    bad = failed_checks(reports)
    record(3, "Littlewood-Paley comparability bands", not bad and dt < 180, summary(bad, dt, 180))


def test_criterion_04_growth_bound():
    reports, dt = suites("z")
    bad = failed_checks(reports)
    record(4, "growth bound stable under grid doubling", not bad and dt < 60, summary(bad, dt, 60))


def test_criterion_05_th1_sufficiency(th1):
    report, dt = th1
    pred = lambda name: "coupling" in name or "criterion finite" in name
    names = [c["name"] for c in report["checks"] if pred(c["name"])]
    bad = failed_checks({"th1": report}, pred)
    ok = not bad and any("refinement" in n for n in names) and dt < 180
    record(5, "th1 sufficiency: one coupling constant, refinement-stable", ok, summary(bad, dt, 180))


def test_criterion_06_necessity_and_decay(th1, th3):
    (r1, dt1), (r3, dt3) = th1, th3
    grow = lambda name: "blow up" in name
    decay = lambda name: "f_j ratios" in name
    bad = failed_checks({"th1": r1}, grow) + failed_checks({"th3": r3}, decay)
    n = sum(grow(c["name"]) for c in r1["checks"]) + sum(decay(c["name"]) for c in r3["checks"])
    dt = dt1 + dt3
    record(6, "f_u blow-up and f_j decay", not bad and n >= 4 and dt < 180,
           summary(bad, dt, 180) + f"; {n} family checks")


def test_criterion_07_q_less_than_p():
    reports, dt = suites("th2", "th4")
    bad = failed_checks(reports)
    record(7, "th2/th4 membership criteria on (2,1) and (4,2)", not bad and dt < 180,
           summary(bad, dt, 180))


def test_criterion_08_s_operators():
    reports, dt = suites("sn1", "sn2", "sn3", "sn4")
    bad = failed_checks(reports)
    dual = all(any("S(n,k) equals T(n,n-k)" in c["name"] and c["passed"] for c in r["checks"])
               for r in reports.values())
    record(8, "S-operator suites and S/T duality", not bad and dual and dt < 120,
           summary(bad, dt, 120))


def test_criterion_09_atomic():
    reports, dt = suites("synthesis", "discretization", "multipliers", "truncation")
    bad = failed_checks(reports)
    record(9, "atomic synthesis, discretization, multipliers, truncation", not bad and dt < 120,
           summary(bad, dt, 120))


def test_criterion_10_forelli_rudin():
    reports, dt = suites("forelli_rudin")
    bad = failed_checks(reports)
    record(10, "Forelli-Rudin ratios bounded and refinement-stable", not bad and dt < 60,
           summary(bad, dt, 60))


def test_criterion_11_determinism(th1):
    first, _ = th1
    second = run_verify("th1")
    a, b = dumps(first), dumps(second)
    same = a == b
    where = "" if same else f"first difference at char {next(i for i, (x, y) in enumerate(zip(a, b)) if x != y)}"
    record(11, "two th1 runs give byte-identical reports", same,
           f"{len(a)} bytes {'identical' if same else where}")
