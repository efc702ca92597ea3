"""Acceptance gate: the ten headline properties at their stated tolerances.

Each test prints one summary line; a FAILED test line is the fail record.
"""

import math
import time

import numpy as np
from scipy.integrate import quad

from holderlab.checks import CheckCase, run_check
from holderlab.cli import run_suite
from holderlab.fields import BoundaryPower, SpaceParams
from holderlab.operators import (
    BoundaryFunction,
    gauge_tilde,
    iterated_log,
    poisson_extend,
)
from holderlab.windows import Window


def _rows(report, suffix):
    return [c for c in report.criteria if c["name"].endswith(suffix)]


def _announce(num, label):
    print(f"criterion {num:02d} ({label}): PASS")


def test_criterion_01_counterexample_reproduction():
    t0 = time.perf_counter()
    report = run_check(CheckCase("counterexample"))
    elapsed = time.perf_counter() - t0
    assert report.verdict == "pass"
    terms = {t["label"]: t for m in report.members for t in m["terms"]}
    for label in ("rhs:ax0", "rhs:axxn"):
        assert all(r["value"] < 1e-10 for r in terms[label]["trail"])
    mixed = terms["mixed"]
    assert [r["scale"] for r in mixed["trail"]] == [1.0, 2.0, 4.0, 8.0]
    assert abs(mixed["slope"] - 1.625) <= 0.15
    assert elapsed < 60.0
    _announce(1, "counterexample reproduction")


def test_criterion_02_main_estimate_boundedness():
    report = run_check(CheckCase("main-estimate"))
    assert report.runtime < 600.0
    assert report.verdict == "pass"
    slopes = _rows(report, "/finite-group-slopes")
    drifts = _rows(report, "/ratio-drift")
    assert len(slopes) == 18 and len(drifts) == 18  # 6 members x 3 sets
    assert all(r["ok"] and r["observed"] < 0.1 for r in slopes)
    assert all(r["ok"] and r["observed"] <= 0.2 for r in drifts)
    tags = {c["name"].split("/")[0] for c in report.criteria}
    assert tags == {"m2n0.5g0.5", "m2n1g0.25", "m4n1g0.25"}
    _announce(2, "main estimate boundedness")


def test_criterion_03_kdiff_two_sided_equivalence():
    report = run_check(CheckCase("kdiff-equivalence"))
    assert report.verdict == "pass"
    lows = _rows(report, "/ratio-low")
    highs = _rows(report, "/ratio-high")
    drifts = _rows(report, "/refine-drift")
    assert lows and len(lows) == len(highs) == len(drifts)
    assert all(r["ok"] and r["observed"] >= 1e-2 for r in lows)
    assert all(r["ok"] and r["observed"] <= 1e2 for r in highs)
    assert all(r["ok"] and r["observed"] < 0.1 for r in drifts)
    _announce(3, "k-difference equivalence")


def test_criterion_04_gauge_exactness():
    window = Window(dim=2, time_points=1)
    heights = np.array([0.05, 0.3, 0.7, 1.2])
    pts = np.stack([np.zeros_like(heights), heights], axis=-1)
    for m, gamma in ((2, 0.5), (4, 0.25)):
        p = SpaceParams(m=m, n=0.5, gamma=gamma)
        for c in (-3.0, 1.0, 5.0):
            res = gauge_tilde(c * BoundaryPower(m - 0.5), p, window)
            assert abs(res.b * res.a - c) / abs(c) < 1e-10
    p_int = SpaceParams(m=2, n=1.0, gamma=0.25)
    for c in (-3.0, 1.0, 5.0):
        planted = c * iterated_log(1)
        res = gauge_tilde(planted, p_int, window)
        assert abs(res.b * res.a - c) / abs(c) < 1e-8
        got = res.q_tilde.evaluate(pts, 0.0)
        want = planted.evaluate(pts, 0.0)
        assert np.max(np.abs(got - want) / np.abs(want)) < 1e-8
    _announce(4, "gauge exactness")


def test_criterion_05_iterated_log_oracle():
    for k in range(1, 5):
        for x in (0.1, 0.5, 1.0, 2.0):
            want, _ = quad(
                lambda s: (x - s) ** (k - 1) / math.factorial(k - 1)
                * math.log(s), 0.0, x, epsabs=1e-13, epsrel=1e-13, limit=200)
            got = iterated_log(k).evaluate(np.array([0.0, x]))
            assert abs(got - want) < 1e-10
    _announce(5, "iterated-log oracle")


def test_criterion_06_poisson_extension():
    t0 = time.perf_counter()
    cos_data = BoundaryFunction("cosine", frequency=1.0, plateau=40.0,
                                taper=10.0)
    ext = poisson_extend(cos_data)

    ys = np.linspace(-3.0, 3.0, 13)
    got = ext.evaluate(np.stack([ys, np.full_like(ys, 1e-5)], axis=-1))
    want = cos_data.value(ys)
    assert np.max(np.abs(got - want) / np.abs(want)) < 1e-4

    for xn in (0.1, 0.2, 0.4):
        val = ext.evaluate(np.array([0.0, xn]))
        assert abs(val - math.exp(-xn)) / math.exp(-xn) < 1e-3

    # derivative decay for |alpha| = m = 2 over boundary data of class C^l,
    # measured along a tilted ray to keep mixed derivatives away from the
    # even-symmetry axis where they vanish identically
    l = 0.5
    rough = poisson_extend(
        BoundaryFunction("abs_power", power=l, plateau=2.0, taper=1.0))
    heights = 0.4 * 0.7 ** np.arange(0, 10)
    ray = np.stack([0.5 * heights, heights], axis=-1)
    design = np.stack([np.log(heights), np.ones_like(heights)], axis=1)
    for alpha in ((2, 0), (1, 1), (0, 2)):
        vals = np.abs(rough.derivative(alpha).evaluate(ray))
        slope = float(np.linalg.lstsq(design, np.log(vals), rcond=None)[0][0])
        assert abs(slope - (-sum(alpha) + l)) < 0.1
    assert time.perf_counter() - t0 < 300.0
    _announce(6, "Poisson extension")


def test_criterion_07_integer_depth_dichotomy():
    report = run_check(CheckCase("lower-order"))
    assert report.verdict == "pass"
    for tag in ("m2n1g0.25", "m4n1g0.25"):
        rows = {c["name"]: c for c in report.criteria
                if c["name"].startswith(tag)}
        vanish = rows[f"{tag}/vanishing/stays-bounded"]
        stick = rows[f"{tag}/nonvanishing/diverges"]
        zyg = rows[f"{tag}/nonvanishing/zygmund-bounded"]
        assert vanish["ok"] and vanish["observed"] < 0.1
        assert stick["ok"] and stick["observed"] > 0.1
        assert zyg["ok"] and zyg["observed"] < 0.1
    _announce(7, "integer-depth dichotomy")


def test_criterion_08_interpolation_sweep():
    report = run_check(CheckCase("interpolation"))
    assert report.verdict == "pass"
    assert all(r["ok"] for r in _rows(report, "/single-constant"))
    assert all(r["ok"] and r["observed"] <= 0.1
               for r in _rows(report, "/low-exponent"))
    assert all(r["ok"] and r["observed"] <= 0.1
               for r in _rows(report, "/high-exponent"))
    for p in (SpaceParams(2, 0.5, 0.5), SpaceParams(2, 1.0, 0.25)):
        tag = f"m{p.m}n{p.n:g}g{p.gamma:g}"
        for k in (0, 1):
            low, high = report.constants[f"{tag}/two-power/k{k}/recovered"]
            assert abs(low - (-1.0 - p.gamma)) <= 0.1
            assert abs(high - (p.m - 1.0)) <= 0.1
    _announce(8, "interpolation sweep")


def test_criterion_09_small_time_decay():
    report = run_check(CheckCase("small-time"))
    assert report.verdict == "pass"
    assert tuple(report.config["t_grid"]) == (1.0, 0.5, 0.25, 0.125)
    rates = _rows(report, "/decay-rate")
    assert len(rates) == len(report.criteria)
    assert all(r["op"] == "ge" and r["ok"] for r in rates)
    assert all(r["observed"] >= r["threshold"] for r in rates)
    _announce(9, "small-time decay")


def test_criterion_10_suite_determinism(tmp_path):
    out1, out8 = tmp_path / "threads1", tmp_path / "threads8"
    assert run_suite(None, out_dir=out1, threads=1) == 0
    assert run_suite(None, out_dir=out8, threads=8) == 0
    names1 = sorted(p.name for p in out1.iterdir())
    names8 = sorted(p.name for p in out8.iterdir())
    assert names1 == names8
    assert "summary.json" in names1 and "counterexample.json" in names1
    for name in names1:
        assert (out1 / name).read_bytes() == (out8 / name).read_bytes(), name
    _announce(10, "suite determinism")
