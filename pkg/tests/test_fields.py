"""Expression algebra: exact derivatives, dilation, serialization."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holderlab.fields import (
    BoundaryPower,
    Const,
    Cutoff1D,
    IterLog,
    Mono,
    MultiIndex,
    PowerOf,
    SpaceParams,
    TimeMono,
    differentiate,
    dilate,
    dumps,
    expression_from_dict,
    expression_to_dict,
    fd_consistency,
    iterlog_value,
    loads,
    mk_product,
    mk_scale,
    mk_sum,
    multiindices,
    preweight_boundary,
)

PTS = np.array([[0.3, 0.7], [-0.8, 0.2], [1.1, 1.3], [0.0, 0.05]])


def test_space_params_derived_quantities():
    p = SpaceParams(m=2, n=0.5, gamma=0.5)
    assert p.omega == pytest.approx(0.25)
    assert not p.integer_n
    q = SpaceParams(m=4, n=1, gamma=0.25)
    assert q.integer_n
    assert q.omega == pytest.approx(0.25)
    r = SpaceParams(m=2, n=0, gamma=0.5)
    assert r.integer_n and r.omega == 0.0


def test_space_params_validation():
    with pytest.raises(ValueError):
        SpaceParams(m=0, n=0.5, gamma=0.5)
    with pytest.raises(ValueError):
        SpaceParams(m=2, n=-0.1, gamma=0.5)
    with pytest.raises(ValueError):
        SpaceParams(m=2, n=2.0, gamma=0.5)   # needs n < m
    with pytest.raises(ValueError):
        SpaceParams(m=2, n=0.5, gamma=1.5)


def test_multiindex_iteration_counts():
    # number of 2d multiindices of total order k is k+1
    for k in range(5):
        assert len(multiindices(k, 2)) == k + 1
    assert len(multiindices(3, 3)) == 10


def test_derivatives_match_finite_differences():
    p = SpaceParams(m=2, n=0.5, gamma=0.5)
    u = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), BoundaryPower(2.5),
                    TimeMono(2)])
    # nested central differences: error grows with the derivative order
    for alpha, tol in (((1, 0), 5e-6), ((0, 1), 5e-6), ((1, 1), 5e-5),
                       ((2, 0), 2e-4)):
        err = fd_consistency(u, alpha, 0, PTS, times=np.full(4, 0.7))
        assert err < tol, (alpha, err)
    err_t = fd_consistency(u, (0, 0), 1, PTS, times=np.full(4, 0.7))
    assert err_t < 5e-6


def test_iterlog_derivative_chain():
    # D L_k = L_{k-1} exactly, down to L_0 = ln
    x = np.array([[0.0, 0.3], [0.0, 1.7]])
    for k in (1, 2, 3):
        d = differentiate(IterLog(k), (0, 1))
        want = iterlog_value(k - 1, x[:, 1])
        np.testing.assert_allclose(d.evaluate(x, 0.0), want, rtol=1e-12)
    d0 = differentiate(IterLog(0), (0, 1))
    np.testing.assert_allclose(d0.evaluate(x, 0.0), 1.0 / x[:, 1], rtol=1e-12)


def test_cutoff_plateau_and_support():
    c = Cutoff1D(0, 0.0, 0.9, 1.4, 4)
    xs = np.array([[0.0, 1.0], [0.85, 1.0], [1.45, 1.0], [2.0, 1.0]])
    v = c.evaluate(xs, 0.0)
    assert v[0] == 1.0 and v[1] == 1.0
    assert v[2] == 0.0 and v[3] == 0.0
    # order-4 smoothstep keeps 4 derivatives bounded through the transition
    d = differentiate(c, (4, 0))
    probe = np.linspace(0.9, 1.4, 41)
    vals = d.evaluate(np.column_stack([probe, np.ones_like(probe)]), 0.0)
    assert np.all(np.isfinite(vals))


def test_dilate_chain_rule_exact():
    u = mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4), Mono(0, 3),
                    BoundaryPower(1.5)])
    e = 2.0
    ue = dilate(u, 0, e)
    x = PTS.copy()
    xd = x.copy()
    xd[:, 0] *= e
    np.testing.assert_allclose(ue.evaluate(x, 0.0), u.evaluate(xd, 0.0),
                               rtol=1e-14)
    # derivative picks up one factor of e per x_1 order
    d = differentiate(ue, (2, 0))
    dref = differentiate(u, (2, 0))
    np.testing.assert_allclose(d.evaluate(x, 0.0),
                               e**2 * dref.evaluate(xd, 0.0), rtol=1e-13)


def test_dilate_refuses_iterlog_on_xn():
    with pytest.raises(ValueError):
        dilate(IterLog(2), "xn", 2.0)


def test_preweight_distributes_and_matches_pointwise():
    u = mk_sum([Mono(0, 2), BoundaryPower(1.5)])
    w = preweight_boundary(u, 0.5)
    x = PTS
    want = x[:, 1] ** 0.5 * u.evaluate(x, 0.0)
    np.testing.assert_allclose(w.evaluate(x, 0.0), want, rtol=1e-14)


def test_serialization_round_trip():
    u = mk_sum([
        mk_scale(2.5, mk_product([Cutoff1D(0, 0.0, 0.9, 1.4, 4),
                                  BoundaryPower(1.5), TimeMono(1)])),
        PowerOf(mk_sum([Const(1.0), Mono(0, 2)]), 0.75),
        IterLog(2),
    ])
    v = expression_from_dict(expression_to_dict(u))
    assert u == v
    t = np.full(PTS.shape[0], 0.3)
    np.testing.assert_array_equal(u.evaluate(PTS, t), v.evaluate(PTS, t))
    assert loads(dumps(u)) == u


@given(st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=20, deadline=None)
def test_mono_derivative_factorial(a, b):
    u = mk_product([Mono(0, a), Mono(1, b)])
    d = differentiate(u, (a, b))
    got = float(d.evaluate(np.array([[0.4, 0.9]]), 0.0)[0])
    assert got == pytest.approx(math.factorial(a) * math.factorial(b))


@given(st.floats(0.3, 3.0), st.floats(0.05, 1.4))
@settings(max_examples=40, deadline=None)
def test_boundary_power_evaluates_like_numpy(power, xn):
    u = BoundaryPower(power)
    got = float(u.evaluate(np.array([[0.0, xn]]), 0.0)[0])
    assert got == pytest.approx(xn**power, rel=1e-13)


def test_arithmetic_operators_build_trees():
    u = Mono(0, 1) + 2.0 * BoundaryPower(1.0)
    x = np.array([[0.5, 0.25]])
    assert float(u.evaluate(x, 0.0)[0]) == pytest.approx(1.0)
    v = Mono(0, 1) * Mono(1, 1) - Const(0.125)
    assert float(v.evaluate(x, 0.0)[0]) == pytest.approx(0.0)
