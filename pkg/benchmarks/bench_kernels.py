"""Timing comparison of the numba and numpy supremum kernels.

The seminorm estimators spend nearly all their time in two loops: the
weighted pair supremum and the stencil-combination supremum.  This script
times both backends on pair sets taken from a real graded window (so the
index patterns match production, not a synthetic shuffle) and on an
end-to-end seminorm estimate.

Run as a module after installing the package:

    python3 -m benchmarks.bench_kernels            # or python3 benchmarks/bench_kernels.py

The backend the package itself uses is fixed at import time by the
HOLDERLAB_BACKEND environment variable; here both implementation modules
are imported directly so one process can time the two sides on identical
inputs.
"""

import time

import numpy as np

from holderlab.kernels import _numpy as knp
from holderlab.seminorms import SeminormSpec, estimate_seminorm, spatial_pairs
from holderlab.windows import HALF_SPACE, Window
from holderlab.families import bump
from holderlab.fields import SpaceParams, BoundaryPower, mk_product

try:
    from holderlab.kernels import _numba as knb
except ImportError:
    knb = None


def _median_time(fn, repeats=5):
    best = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return float(np.median(best))


def _pair_workload(extra_levels):
    window = Window(dim=2, tangent_points=17, time_points=3,
                    levels=24 + extra_levels)
    cloud = HALF_SPACE.cloud(window)
    times = window.times()
    pair = spatial_pairs(cloud, "isotropic", n_times=len(times),
                         cap=window.pair_cap)
    rng = np.random.default_rng(7)
    n_pts = cloud.size * len(times)
    vals = rng.standard_normal(n_pts)
    wb = np.repeat(cloud.weight_base, len(times))
    return vals, wb, pair


def bench_sup_pairs():
    rows = []
    for extra in (0, 10, 20):
        vals, wb, pair = _pair_workload(extra)
        args = (vals, wb, pair.i, pair.j, pair.dist, 0.25, False, 0.5)
        t_np = _median_time(lambda: knp.sup_pairs(*args))
        if knb is not None:
            knb.sup_pairs(*args)  # compile outside the timer
            t_nb = _median_time(lambda: knb.sup_pairs(*args))
            assert np.isclose(knb.sup_pairs(*args)[0], knp.sup_pairs(*args)[0],
                              rtol=1e-12)
        else:
            t_nb = float("nan")
        rows.append(("sup_pairs", pair.i.size, t_np, t_nb))
    return rows


def bench_sup_combos():
    rows = []
    rng = np.random.default_rng(11)
    coeffs = np.array([1.0, -3.0, 3.0, -1.0])
    for B in (1 << 18, 1 << 21):
        vals2d = rng.standard_normal((B, 4))
        weights = rng.random(B)
        denoms = rng.random(B) + 0.1
        args = (vals2d, coeffs, weights, denoms)
        t_np = _median_time(lambda: knp.sup_combos(*args))
        if knb is not None:
            knb.sup_combos(*args)
            t_nb = _median_time(lambda: knb.sup_combos(*args))
            assert np.isclose(knb.sup_combos(*args)[0], knp.sup_combos(*args)[0],
                              rtol=1e-12)
        else:
            t_nb = float("nan")
        rows.append(("sup_combos", B, t_np, t_nb))
    return rows


def bench_end_to_end():
    """One full weighted-seminorm estimate through whichever backend the
    package picked at import time (reported for context)."""
    p = SpaceParams(m=2, n=0.5, gamma=0.5)
    u = mk_product([bump(p), BoundaryPower(1.5)])
    spec = SeminormSpec(exponent=p.gamma, weight_power=p.omega * p.gamma)
    window = Window(dim=2, tangent_points=17, time_points=3, levels=34)
    t = _median_time(lambda: estimate_seminorm(u, spec, window), repeats=3)
    return t


def main():
    from holderlab import kernels
    print(f"package backend: {kernels.backend_name()}")
    print(f"{'kernel':12s} {'size':>10s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, size, t_np, t_nb in bench_sup_pairs() + bench_sup_combos():
        ratio = t_np / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
        print(f"{name:12s} {size:10d} {t_np:9.4f}s {t_nb:9.4f}s {ratio:7.1f}x")
    print(f"end-to-end weighted seminorm ({kernels.backend_name()}): "
          f"{bench_end_to_end():.4f}s")


if __name__ == "__main__":
    main()
