"""Seminorm estimators against brute-force oracles and each other."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holderlab.fields import (
    BoundaryPower,
    Cutoff1D,
    IterLog,
    Mono,
    TimeMono,
    mk_product,
    preweight_boundary,
)
from holderlab.seminorms import (
    Ladder,
    SeminormSpec,
    TooFewRungs,
    classify_growth,
    estimate_seminorm,
    estimate_with_ladder,
    kth_difference_seminorm,
    sup_norm,
    time_seminorm,
    weighted_seminorm,
    zygmund_seminorm,
)
from holderlab.windows import HALF_SPACE, Window

SMALL = Window(dim=2, tangent_points=4, levels=5, time_points=2)


def brute_force_seminorm(f, window, exponent, weight_power, convention):
    """Direct double loop over every same-time point pair."""
    cloud = HALF_SPACE.cloud(window)
    times = window.times()
    best = 0.0
    for t in times:
        vals = np.asarray(f.evaluate(cloud.coords,
                                     np.full(cloud.size, t)), dtype=float)
        for i in range(cloud.size):
            for j in range(i + 1, cloud.size):
                d = np.linalg.norm(cloud.coords[i] - cloud.coords[j])
                if d == 0.0:
                    continue
                wb = (min if convention == "min" else max)(
                    cloud.weight_base[i], cloud.weight_base[j])
                w = wb**weight_power if weight_power != 0.0 else 1.0
                if w == 0.0:
                    continue
                q = w * abs(vals[i] - vals[j]) / d**exponent
                best = max(best, q)
    return best


@pytest.mark.parametrize("convention", ["max", "min"])
def test_weighted_seminorm_matches_brute_force(convention):
    u = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(0.75),
                    TimeMono(1)])
    got = weighted_seminorm(u, SMALL, 0.5, 0.25, convention=convention)
    want = brute_force_seminorm(u, SMALL, 0.5, 0.25, convention)
    assert got.value == pytest.approx(want, rel=1e-12)
    assert got.witness is not None


def test_weighted_seminorm_frozen_value():
    # sup over axis pairs of |x2^0.75 - xbar2^0.75| * max^0.125 / h^0.5,
    # graded column of SMALL; fixed by the window geometry
    u = BoundaryPower(0.75)
    got = weighted_seminorm(u, SMALL, 0.5, 0.125, pairs="axis", axis="xn")
    assert got.value == pytest.approx(1.1642177654608983, rel=1e-12)


def test_zero_field_and_constants_have_zero_seminorm():
    z = mk_product([Mono(0, 0)])  # constant 1
    est = weighted_seminorm(z, SMALL, 0.5, 0.25)
    assert est.value == 0.0
    assert time_seminorm(z, SMALL, 0.5).value == 0.0


def test_pre_weight_equals_preweighted_field():
    u = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), IterLog(1)])
    a = weighted_seminorm(u, SMALL, 0.5, 0.25, pre_weight=0.5)
    b = weighted_seminorm(preweight_boundary(u, 0.5), SMALL, 0.5, 0.25)
    assert a.value == b.value


def test_min_convention_never_exceeds_max():
    u = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(0.6)])
    lo = weighted_seminorm(u, SMALL, 0.5, 0.25, convention="min")
    hi = weighted_seminorm(u, SMALL, 0.5, 0.25, convention="max")
    assert lo.value <= hi.value + 1e-15


def test_eps_restriction_shrinks_the_sup():
    u = BoundaryPower(0.75)
    full = weighted_seminorm(u, SMALL, 0.5, 0.125, pairs="axis", axis="xn")
    cut = weighted_seminorm(u, SMALL, 0.5, 0.125, pairs="axis", axis="xn",
                            eps_restrict=0.5)
    assert cut.value <= full.value + 1e-15
    assert cut.value > 0.0


def test_kth_difference_k1_equals_first_difference():
    u = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(0.75)])
    a = kth_difference_seminorm(u, SMALL, 1, 0.5, weight_power=0.25,
                                convention="min", pairs="axis", axis="xn")
    b = weighted_seminorm(u, SMALL, 0.5, 0.25, convention="min",
                          pairs="axis", axis="xn")
    assert a.value == pytest.approx(b.value, rel=1e-14)


def test_kth_difference_kills_low_degree_polynomials():
    # second differences of an affine profile vanish identically
    u = Mono(1, 1)
    est = kth_difference_seminorm(u, SMALL, 2, 0.5, pairs="axis", axis="xn")
    assert est.value == pytest.approx(0.0, abs=1e-12)


def test_sup_norm_exact_on_boundary_power():
    w = Window(dim=2, tangent_points=3, levels=4, boundary_extent=1.5,
               time_points=1)
    est = sup_norm(BoundaryPower(0.5), w)
    assert est.value == pytest.approx(1.5**0.5, rel=1e-14)
    # the weighted sup x^0.5 * x^-0.5 is 1 away from the wall
    est2 = sup_norm(BoundaryPower(-0.5), w, pre_weight=0.5)
    assert est2.value == pytest.approx(1.0, rel=1e-14)
    assert est2.nonfinite_skipped == 0


def test_sup_norm_skips_nonfinite_rows():
    w = Window(dim=2, tangent_points=3, levels=4, time_points=1)
    est = sup_norm(IterLog(0), w)  # ln x2, -inf on the wall
    assert np.isfinite(est.value)
    assert est.nonfinite_skipped == 3  # one per boundary-row point


def test_time_seminorm_linear_field():
    w = Window(dim=2, tangent_points=3, levels=3, time_points=5,
               time_extent=1.0)
    est = time_seminorm(TimeMono(1), w, beta=0.5)
    # |dt| / dt^0.5 maximized at the full span dt = 2
    assert est.value == pytest.approx(2.0**0.5, rel=1e-12)
    with pytest.raises(ValueError):
        time_seminorm(TimeMono(1), w, beta=1.5)


def test_zygmund_bounded_on_x_log_x():
    # L_1 = x ln x - x is Zygmund but not Lipschitz in the boundary variable
    u = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), IterLog(1)])
    w = Window(dim=2, time_points=1)
    z = zygmund_seminorm(u, w, "xprime", 0.375)
    assert z.value == pytest.approx(1.5442139909093413, rel=1e-10)
    z2 = zygmund_seminorm(u, w.refined(4), "xprime", 0.375)
    assert z2.value <= z.value * 1.05
    with pytest.raises(ValueError):
        zygmund_seminorm(u, w, "diagonal", 0.375)


def test_classify_growth_modes():
    cls, slope = classify_growth([(1, 1.0), (2, 2.0), (4, 4.0)])
    assert cls == "diverging" and slope == pytest.approx(1.0)
    cls, slope = classify_growth([(1, 3.0), (2, 3.0), (4, 3.0)])
    assert cls == "bounded" and abs(slope) < 1e-12
    cls, _ = classify_growth([(1, 0.0), (2, 0.0), (4, 0.0)])
    assert cls == "zero"
    # non-monotone trails never count as diverging
    cls, _ = classify_growth([(1, 1.0), (2, 8.0), (4, 2.0)])
    assert cls != "diverging"
    with pytest.raises(TooFewRungs):
        classify_growth([(1, 1.0), (2, 2.0)])


def test_ladder_modes_produce_expected_scales():
    base = Window(dim=2, tangent_points=3, levels=4)
    grow = Ladder("grow", (1.0, 2.0, 4.0))
    scales = [s for s, _ in grow.windows(base)]
    assert scales == [1.0, 2.0, 4.0]
    _, w4 = list(grow.windows(base))[-1]
    assert w4.tangent_extent == pytest.approx(4 * base.tangent_extent)
    refine = Ladder("refine", (0, 2, 4))
    rs = list(refine.windows(base))
    assert rs[0][0] == pytest.approx(1.0)
    assert rs[1][0] == pytest.approx(base.grading_ratio**-2)
    assert rs[1][1].levels == base.levels + 2
    with pytest.raises(ValueError):
        list(Ladder("shrink", (1, 2, 3)).windows(base))


def test_estimate_with_ladder_carries_trail_and_classification():
    u = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(0.375)])
    spec = SeminormSpec(exponent=0.5, weight_power=0.125)
    est = estimate_with_ladder(u, spec, SMALL, Ladder("refine", (0, 1, 2)))
    assert len(est.trail) == 3
    assert est.classification in ("bounded", "diverging", "zero")
    assert est.slope is not None
    assert [r["scale"] for r in est.trail] == sorted(
        r["scale"] for r in est.trail)
    with pytest.raises(TooFewRungs):
        estimate_with_ladder(u, spec, SMALL, Ladder("refine", (0, 1)))


def test_estimator_is_deterministic():
    u = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(0.75),
                    TimeMono(1)])
    a = weighted_seminorm(u, SMALL, 0.5, 0.25)
    b = weighted_seminorm(u, SMALL, 0.5, 0.25)
    assert a.value == b.value and a.witness == b.witness


@given(st.floats(0.1, 0.9), st.floats(0.0, 1.0))
@settings(max_examples=15, deadline=None)
def test_seminorm_nonnegative_and_scales_linearly(exponent, weight_power):
    u = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(0.8)])
    est = weighted_seminorm(u, SMALL, exponent, weight_power)
    assert est.value >= 0.0
    doubled = weighted_seminorm(2.0 * u, SMALL, exponent, weight_power)
    assert doubled.value == pytest.approx(2.0 * est.value, rel=1e-12)


def test_spec_validation():
    with pytest.raises(ValueError):
        SeminormSpec(exponent=0.5, pairs="diagonal")
    with pytest.raises(ValueError):
        SeminormSpec(exponent=-0.5)
    with pytest.raises(ValueError):
        SeminormSpec(exponent=0.5, convention="median")
