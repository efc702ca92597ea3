"""Backend parity: the numba kernels must agree with the numpy ones."""

import os
import subprocess
import sys

import numpy as np
import pytest

from holderlab import kernels
from holderlab.kernels import _numpy as knp

knb = pytest.importorskip(
    "holderlab.kernels._numba",
    reason="numba backend unavailable; numpy fallback covered elsewhere")


def _pair_workload(seed, P=120, E=600, with_nonfinite=False):
    rng = np.random.default_rng(seed)
    vals = rng.standard_normal(P)
    wbase = np.abs(rng.standard_normal(P))
    wbase[:5] = 0.0  # boundary-like rows
    ii = rng.integers(0, P, size=E).astype(np.int64)
    jj = rng.integers(0, P, size=E).astype(np.int64)
    keep = ii != jj
    ii, jj = ii[keep], jj[keep]
    dists = np.abs(rng.standard_normal(ii.size)) + 1e-3
    if with_nonfinite:
        vals[7] = np.inf
        vals[11] = np.nan
    return vals, wbase, ii, jj, dists


def oracle_sup_pairs(vals, wbase, ii, jj, dists, weight_pow, use_min,
                     exponent):
    best, bidx, nonf = 0.0, -1, 0
    for q in range(ii.size):
        a, b = wbase[ii[q]], wbase[jj[q]]
        lo, hi = min(a, b), max(a, b)
        if weight_pow == 0.0:
            w = 1.0
        else:
            with np.errstate(divide="ignore"):
                w = float(np.power(lo if use_min else hi, weight_pow))
        dv = vals[ii[q]] - vals[jj[q]]
        if not np.isfinite(dv):
            if w > 0.0:
                nonf += 1
            continue
        if w == 0.0:
            continue
        r = w * abs(dv) / dists[q]**exponent
        if r > best:
            best, bidx = r, q
    return best, bidx, nonf


@pytest.mark.parametrize("weight_pow", [0.0, 0.5, -0.75])
@pytest.mark.parametrize("use_min", [False, True])
@pytest.mark.parametrize("with_nonfinite", [False, True])
def test_sup_pairs_backends_match_oracle(weight_pow, use_min, with_nonfinite):
    args = _pair_workload(3, with_nonfinite=with_nonfinite)
    want = oracle_sup_pairs(*args, weight_pow, use_min, 0.5)
    got_np = knp.sup_pairs(*args, weight_pow, use_min, 0.5)
    got_nb = knb.sup_pairs(*args, weight_pow, use_min, 0.5)
    for got in (got_np, got_nb):
        assert got[0] == pytest.approx(want[0], rel=1e-12)
        assert got[1] == want[1]  # both take the first maximizer
        assert got[2] == want[2]


def test_sup_pairs_empty_input():
    e = np.empty(0)
    ei = np.empty(0, dtype=np.int64)
    for fn in (knp.sup_pairs, knb.sup_pairs):
        assert fn(e, e, ei, ei, e, 0.5, False, 0.5) == (0.0, -1, 0)


def test_sup_combos_backends_agree():
    rng = np.random.default_rng(11)
    B, K = 4000, 6
    vals2d = rng.standard_normal((B, K))
    coeffs = np.array([1.0, -2.0, 1.0, -1.0, 2.0, -1.0])
    weights = np.abs(rng.standard_normal(B))
    weights[0] = 0.0
    denoms = np.abs(rng.standard_normal(B)) + 1e-3
    vals2d[0, 0] = np.nan   # zero weight: skipped silently
    vals2d[17, 3] = np.inf  # positive weight: counted as nonfinite
    a = knp.sup_combos(vals2d, coeffs, weights, denoms)
    b = knb.sup_combos(vals2d, coeffs, weights, denoms)
    assert a[0] == pytest.approx(b[0], rel=1e-12)
    assert a[1] == b[1]
    assert a[2] == b[2] == 1
    # direct check of the winning row
    acc = vals2d[a[1]] @ coeffs
    assert a[0] == pytest.approx(weights[a[1]] * abs(acc) / denoms[a[1]],
                                 rel=1e-12)


def test_backend_name_reports_active_choice():
    assert kernels.backend_name() in ("numba", "numpy")


def test_backend_env_flag_forces_numpy():
    code = ("import holderlab.kernels as k; "
            "print(k.backend_name())")
    env = dict(os.environ, HOLDERLAB_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_backend_env_flag_rejects_unknown():
    code = "import holderlab.kernels"
    env = dict(os.environ, HOLDERLAB_BACKEND="cuda")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True)
    assert out.returncode != 0
    assert "HOLDERLAB_BACKEND" in out.stderr
