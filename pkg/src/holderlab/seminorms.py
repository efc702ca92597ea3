"""Weighted Holder seminorm estimators on graded windows.

Every estimator reduces a seminorm

    sup  w(x, xbar) * |D f(x) - D f(xbar)| / step**exponent

to a supremum over an explicit finite pair or stencil set drawn from a
window cloud, evaluated through the compiled kernels.  The weight is a power
of the boundary distance with a max- or min-endpoint convention; first
differences generalize to k-th differences and to the mixed second/first
"Zygmund" stencils used at integer exponents.

Truncation to windows is intentional: divergence is detected by growth or
refinement ladders (``estimate_with_ladder`` + ``classify_growth``), never by
evaluating an honest infinity.  Points where an integrand fails to be finite
are skipped and counted; they appear in estimates as the
``nonfinite_skipped`` flag rather than as exceptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .fields import Expression, differentiate, preweight_boundary
from .windows import HALF_SPACE, DomainGeometry, PairSet, SpatialCloud, Window
from .windows import spatial_pairs, time_pairs

__all__ = [
    "SeminormSpec",
    "SeminormEstimate",
    "TooFewRungs",
    "Ladder",
    "cc_distance",
    "sup_norm",
    "weighted_seminorm",
    "kth_difference_seminorm",
    "time_seminorm",
    "zygmund_seminorm",
    "estimate_seminorm",
    "estimate_with_ladder",
    "classify_growth",
]


def cc_distance(x, xbar, omega: float):
    """Boundary-degenerate distance |x-xbar| / (|x-xbar|^w + x_N^w + xbar_N^w).

    Vanishes only on the diagonal, tends to |x-xbar|^(1-w) deep inside the
    half-space relative to the gap, and saturates near 1 * |x-xbar|^(1-w)
    scaling between boundary points.
    """
    xa = np.asarray(x, dtype=float)
    xb = np.asarray(xbar, dtype=float)
    gap = np.linalg.norm(xa - xb, axis=-1)
    den = gap**omega + xa[..., -1] ** omega + xb[..., -1] ** omega
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(gap > 0, gap / np.where(den > 0, den, 1.0), 0.0)
    return s if s.ndim else float(s)


class TooFewRungs(ValueError):
    """A growth classification was requested with fewer than three rungs."""


@dataclass(frozen=True)
class SeminormSpec:
    """What to take the supremum over.

    ``pairs`` selects the pairing variable: "isotropic" (any two spatial
    points at equal time), "axis" (points differing in one coordinate;
    ``axis`` is a tangential index or "xn"), "xprime" (equal distance level,
    any tangential difference), or "time" (equal point, two times).
    ``weight_power`` is the exponent on the boundary distance of the pair
    (max or min endpoint per ``convention``); k-th differences for
    ``diff_order`` >= 2; ``eps_restrict`` keeps only pairs with
    step <= eps * distance.
    """

    exponent: float
    weight_power: float = 0.0
    convention: str = "max"
    pairs: str = "isotropic"
    axis: object = None
    diff_order: int = 1
    eps_restrict: float | None = None

    def __post_init__(self):
        if not (0.0 < self.exponent <= self.diff_order):
            raise ValueError("need 0 < exponent <= diff_order")
        if self.convention not in ("max", "min"):
            raise ValueError("convention must be 'max' or 'min'")
        if self.pairs not in ("isotropic", "axis", "xprime", "time"):
            raise ValueError(f"unknown pair mode {self.pairs!r}")
        if self.pairs == "time" and self.weight_power != 0.0:
            raise ValueError("time seminorms are unweighted; "
                             "apply boundary weights to the integrand")
        if self.diff_order < 1:
            raise ValueError("diff_order must be >= 1")


@dataclass
class SeminormEstimate:
    value: float
    witness: dict | None = None
    nonfinite_skipped: int = 0
    subsampled: bool = False
    trail: list = field(default_factory=list)
    classification: str | None = None
    slope: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


# --------------------------------------------------------------------------
# evaluation plumbing
# --------------------------------------------------------------------------

def _eval_points(f, x, t):
    """Evaluate an Expression or any object with .evaluate(x, t)."""
    out = np.asarray(f.evaluate(x, t), dtype=float)
    return out.reshape(x.shape[0])


def _flat_grid(cloud: SpatialCloud, times: np.ndarray):
    S = cloud.size
    T = len(times)
    x = np.repeat(cloud.coords, T, axis=0)
    t = np.tile(times, S)
    wb = np.repeat(cloud.weight_base, T)
    return x, t, wb


def _pair_witness(x, t, pair: PairSet, idx: int) -> dict:
    i, j = int(pair.i[idx]), int(pair.j[idx])
    return {
        "x": [float(v) for v in x[i]], "t": float(t[i]),
        "xbar": [float(v) for v in x[j]], "tbar": float(t[j]),
        "step": float(pair.dist[idx]),
    }


def _binomial_coeffs(k: int) -> np.ndarray:
    return np.array([(-1.0) ** (k - l) * math.comb(k, l) for l in range(k + 1)])


# --------------------------------------------------------------------------
# single-window estimators
# --------------------------------------------------------------------------

def estimate_seminorm(f, spec: SeminormSpec, window: Window,
                      geometry: DomainGeometry = HALF_SPACE) -> SeminormEstimate:
    """Supremum estimate of one seminorm of ``f`` over one window."""
    cloud = geometry.cloud(window)
    times = window.times()

    if spec.diff_order == 1:
        return _first_difference(f, spec, window, geometry, cloud, times)
    return _kth_difference(f, spec, window, geometry, cloud, times)


def _first_difference(f, spec, window, geometry, cloud, times):
    x, t, wb = _flat_grid(cloud, times)
    vals = _eval_points(f, x, t)
    if spec.pairs == "time":
        pair = time_pairs(cloud.size, times, cap=window.pair_cap)
    else:
        pair = spatial_pairs(cloud, spec.pairs, axis=spec.axis,
                             n_times=len(times), cap=window.pair_cap,
                             eps_restrict=spec.eps_restrict)
    if pair.i.size == 0:
        return SeminormEstimate(0.0, None, 0, pair.subsampled)
    best, bidx, nonf = kernels.sup_pairs(
        vals, wb, pair.i, pair.j, pair.dist,
        float(spec.weight_power), spec.convention == "min", float(spec.exponent))
    witness = _pair_witness(x, t, pair, bidx) if bidx >= 0 else None
    return SeminormEstimate(float(best), witness, int(nonf), pair.subsampled)


def _kth_difference(f, spec, window, geometry, cloud, times):
    k = spec.diff_order
    coeffs = _binomial_coeffs(k)
    x, t, wb = _flat_grid(cloud, times)

    if spec.pairs == "time":
        pair = time_pairs(cloud.size, times, cap=window.pair_cap)
    else:
        pair = spatial_pairs(cloud, spec.pairs, axis=spec.axis,
                             n_times=len(times), cap=window.pair_cap,
                             eps_restrict=spec.eps_restrict)
    if pair.i.size == 0:
        return SeminormEstimate(0.0, None, 0, pair.subsampled)

    B = pair.i.size
    vals2d = np.empty((B, k + 1))
    xi, ti = x[pair.i], t[pair.i]
    xj, tj = x[pair.j], t[pair.j]
    for l in range(k + 1):
        lam = l / k
        xl = xi * (1.0 - lam) + xj * lam
        tl = ti * (1.0 - lam) + tj * lam
        vals2d[:, l] = _eval_points(f, xl, tl)

    if spec.weight_power == 0.0:
        weights = np.ones(B)
    else:
        if spec.convention == "min":
            base = np.minimum(wb[pair.i], wb[pair.j])
        else:
            base = np.maximum(wb[pair.i], wb[pair.j])
        weights = base ** spec.weight_power
    steps = pair.dist / k
    denoms = steps**spec.exponent

    best, bidx, nonf = kernels.sup_combos(vals2d, coeffs, weights, denoms)
    witness = None
    if bidx >= 0:
        witness = _pair_witness(x, t, pair, bidx)
        witness["k"] = k
        witness["step"] = float(steps[bidx])
    return SeminormEstimate(float(best), witness, int(nonf), pair.subsampled)


def sup_norm(f, window: Window, geometry: DomainGeometry = HALF_SPACE,
             pre_weight: float = 0.0) -> SeminormEstimate:
    """Max of |f| over the window cloud; non-finite samples are skipped."""
    g = _apply_preweight(f, pre_weight, geometry)
    cloud = geometry.cloud(window)
    times = window.times()
    x, t, _ = _flat_grid(cloud, times)
    vals = _eval_points(g, x, t)
    finite = np.isfinite(vals)
    nonf = int(np.count_nonzero(~finite))
    if not finite.any():
        return SeminormEstimate(0.0, None, nonf, False)
    masked = np.where(finite, np.abs(vals), -np.inf)
    idx = int(np.argmax(masked))
    witness = {"x": [float(v) for v in x[idx]], "t": float(t[idx])}
    return SeminormEstimate(float(masked[idx]), witness, nonf, False)


# --------------------------------------------------------------------------
# named seminorm fronts
# --------------------------------------------------------------------------

class _NumericWeight:
    """Evaluator wrapper multiplying by d(x)**p numerically (non-Expression f)."""

    def __init__(self, f, power: float, geometry: DomainGeometry):
        self.f = f
        self.power = power
        self.geometry = geometry

    def evaluate(self, x, t=None):
        base = self.geometry.distance(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(base > 0, base, 1.0) ** self.power
        w = np.where(base > 0, w, 0.0 if self.power > 0 else
                     (1.0 if self.power == 0 else np.nan))
        return w * np.asarray(self.f.evaluate(x, t), dtype=float)


def _apply_preweight(f, power: float, geometry: DomainGeometry):
    if power == 0.0:
        return f
    if isinstance(f, Expression):
        if geometry.kind == "half_space":
            return preweight_boundary(f, power)
        from .fields import PowerOf
        return preweight_boundary(f, PowerOf(geometry.distance_expression(), power))
    return _NumericWeight(f, power, geometry)


def weighted_seminorm(f, window: Window, exponent: float, weight_power: float,
                      convention: str = "max", pairs: str = "isotropic",
                      axis=None, pre_weight: float = 0.0,
                      geometry: DomainGeometry = HALF_SPACE,
                      eps_restrict: float | None = None) -> SeminormEstimate:
    """First-difference weighted Holder seminorm over one window."""
    g = _apply_preweight(f, pre_weight, geometry)
    spec = SeminormSpec(exponent=exponent, weight_power=weight_power,
                        convention=convention, pairs=pairs, axis=axis,
                        eps_restrict=eps_restrict)
    return estimate_seminorm(g, spec, window, geometry)


def kth_difference_seminorm(f, window: Window, k: int, exponent: float,
                            weight_power: float = 0.0, convention: str = "min",
                            pairs: str = "isotropic", axis=None,
                            pre_weight: float = 0.0,
                            geometry: DomainGeometry = HALF_SPACE) -> SeminormEstimate:
    """k-th difference seminorm sup w |Delta_h^k f| / |h|^exponent."""
    g = _apply_preweight(f, pre_weight, geometry)
    spec = SeminormSpec(exponent=exponent, weight_power=weight_power,
                        convention=convention, pairs=pairs, axis=axis,
                        diff_order=k)
    return estimate_seminorm(g, spec, window, geometry)


def time_seminorm(f, window: Window, beta: float, pre_weight: float = 0.0,
                  geometry: DomainGeometry = HALF_SPACE) -> SeminormEstimate:
    """Holder-in-time seminorm of exponent beta in (0, 1], weighted by an
    optional boundary-distance power applied to the integrand."""
    if not (0.0 < beta <= 1.0):
        raise ValueError("time exponent must lie in (0, 1]")
    g = _apply_preweight(f, pre_weight, geometry)
    spec = SeminormSpec(exponent=beta, pairs="time")
    return estimate_seminorm(g, spec, window, geometry)


def zygmund_seminorm(f, window: Window, coupled: str, exponent: float,
                     geometry: DomainGeometry = HALF_SPACE,
                     theta_count: int = 10, step_count: int = 4) -> SeminormEstimate:
    """Mixed stencil sup |D2_{theta,x_N} D1_{h,.} f| / (theta * h^exponent).

    A second difference of step theta in the boundary direction couples with
    a first difference in the tangential block (coupled="xprime") or in time
    (coupled="time"); theta runs over a geometric ladder, h over doubling
    grid-scale steps of both signs.
    """
    if coupled not in ("xprime", "time"):
        raise ValueError("coupled must be 'xprime' or 'time'")
    if geometry.kind != "half_space":
        raise ValueError("mixed boundary stencils assume the half-space")
    cloud = geometry.cloud(window)
    times = window.times()
    x, t, _ = _flat_grid(cloud, times)
    P = x.shape[0]
    dim = x.shape[1]

    pos = window.boundary_samples()[1:]
    stride = max(1, len(pos) // theta_count)
    thetas = pos[::-1][::stride]  # largest first, geometric

    offsets = []
    if coupled == "xprime":
        base_h = 2.0 * window.tangent_extent / max(window.tangent_points - 1, 1)
        for ax in range(dim - 1):
            for l in range(step_count):
                h = base_h * 2.0**l
                if h > 2.0 * window.tangent_extent:
                    break
                offsets.append((ax, h))
                offsets.append((ax, -h))
    else:
        if len(times) < 2:
            return SeminormEstimate(0.0, None, 0, False)
        base_h = (times[-1] - times[0]) / (len(times) - 1)
        for l in range(step_count):
            h = base_h * 2.0**l
            if h > times[-1] - times[0]:
                break
            offsets.append(("t", h))
            offsets.append(("t", -h))

    coeffs = np.array([1.0, -2.0, 1.0, -1.0, 2.0, -1.0])
    best_all = SeminormEstimate(0.0, None, 0, False)
    for theta in thetas:
        for ax, h in offsets:
            xs = []
            ts = []
            for shifted in (True, False):
                for s in (0.0, theta, 2.0 * theta):
                    xx = x.copy()
                    tt = t.copy()
                    xx[:, -1] += s
                    if shifted:
                        if ax == "t":
                            tt = tt + h
                        else:
                            xx[:, ax] += h
                    xs.append(xx)
                    ts.append(tt)
            vals2d = np.stack([_eval_points(f, xx, tt) for xx, tt in zip(xs, ts)],
                              axis=1)
            denom = np.full(P, theta * abs(h) ** exponent)
            best, bidx, nonf = kernels.sup_combos(vals2d, coeffs, np.ones(P), denom)
            best_all.nonfinite_skipped += int(nonf)
            if best > best_all.value:
                best_all.value = float(best)
                best_all.witness = {
                    "x": [float(v) for v in x[bidx]], "t": float(t[bidx]),
                    "theta": float(theta), "axis": ax, "h": float(h),
                }
    return best_all


# --------------------------------------------------------------------------
# ladders and growth classification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Ladder:
    """Sequence of windows indexed by a scale the classifier can regress on.

    mode "grow" multiplies the window extents by each rung factor; mode
    "refine" deepens the boundary grading by ``rungs`` extra levels, with the
    scale defined as the shrink factor of the finest height.
    """

    mode: str = "grow"
    rungs: tuple = (1.0, 2.0, 4.0)

    def windows(self, base: Window):
        out = []
        for r in self.rungs:
            if self.mode == "grow":
                out.append((float(r), base.scaled(float(r))))
            elif self.mode == "refine":
                out.append((base.grading_ratio ** (-int(r)), base.refined(int(r))))
            else:
                raise ValueError(f"unknown ladder mode {self.mode!r}")
        return out


def classify_growth(trail: Sequence[tuple], atol: float = 1e-10,
                    slope_threshold: float = 0.1) -> tuple[str, float]:
    """Classify a (scale, value) trail as zero, bounded, or diverging.

    The slope is the least-squares fit of log value against log scale over
    the rungs above ``atol``; "diverging" requires slope > threshold and a
    monotone nondecreasing trail.
    """
    pairs = [(float(s), float(v)) for s, v in trail]
    if len(pairs) < 3:
        raise TooFewRungs(f"need at least 3 rungs, got {len(pairs)}")
    vals = np.array([v for _, v in pairs])
    scales = np.array([s for s, _ in pairs])
    if np.all(np.abs(vals) <= atol):
        return "zero", 0.0
    pos = vals > atol
    if pos.sum() < 2:
        return "bounded", 0.0
    logs = np.log(scales[pos])
    logv = np.log(vals[pos])
    a = np.stack([logs, np.ones_like(logs)], axis=1)
    slope = float(np.linalg.lstsq(a, logv, rcond=None)[0][0])
    monotone = bool(np.all(np.diff(vals) >= -1e-9 * np.abs(vals[:-1])))
    if slope > slope_threshold and monotone:
        return "diverging", slope
    return "bounded", slope


def estimate_with_ladder(f, spec: SeminormSpec, base: Window, ladder: Ladder,
                         geometry: DomainGeometry = HALF_SPACE,
                         atol: float = 1e-10,
                         slope_threshold: float = 0.1) -> SeminormEstimate:
    """Run one seminorm over a ladder; classify the trail; return the last
    rung's estimate carrying the full trail."""
    est = None
    trail = []
    for scale, win in ladder.windows(base):
        est = estimate_seminorm(f, spec, win, geometry)
        trail.append({"scale": scale, "levels": win.levels, "value": est.value})
    est.trail = trail
    cls, slope = classify_growth([(r["scale"], r["value"]) for r in trail],
                                 atol=atol, slope_threshold=slope_threshold)
    est.classification = cls
    est.slope = slope
    return est
