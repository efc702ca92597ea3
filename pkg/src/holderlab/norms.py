"""Assembly of the composite norms and of the two sides of the main estimate.

The central inequality bounds a long list of derived seminorm groups of u by
the few generating ones:

    generating side:  sum_i < x_N^n D_{x_i}^m u >_{x_i-pairs, weighted}
                      + < D_t u >_{time, gamma/m}

    derived side, six groups:
      1. weighted space(+time) seminorms of x_N^{n-j} D^alpha u, |alpha| = m-j
      2. time seminorms of x_N^{n-j*omega} D^alpha u at exponent (gamma+j)/m
      3. the same space(+time) seminorm of D_t u
      4. unweighted tangential seminorms of D^alpha u at the reduced
         smoothness m - n + (1-omega)*gamma
      5. weighted tangential seminorms at smoothness m - n + gamma
      6. time seminorms of low-order D^alpha u at 1 - j/(m-n) + gamma/m

    when a tangential smoothness lands on an integer, the top terms switch
    to second differences at exponent 1 and are flagged.

Each term is computed per window; callers run them over ladders and classify
the trails.  Totals deliberately exclude nothing here: finiteness decisions
belong to the verification layer, which sees every term's classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fields import (
    Expression,
    MultiIndex,
    SpaceParams,
    depends_on_time,
    differentiate,
    multiindices,
)
from .seminorms import (
    SeminormEstimate,
    kth_difference_seminorm,
    sup_norm,
    time_seminorm,
    weighted_seminorm,
)
from .windows import HALF_SPACE, DomainGeometry, Window

__all__ = [
    "Term",
    "generating_terms",
    "derived_group_terms",
    "composite_norm",
    "NORM_VARIANTS",
]


@dataclass
class Term:
    """One named contribution to a norm or to a side of the estimate."""

    label: str
    group: str
    value: float
    estimate: SeminormEstimate | None = None
    meta: dict = field(default_factory=dict)


def _alabel(alpha) -> str:
    return "a" + ".".join(str(a) for a in alpha)


def _axes(dim: int) -> list:
    return list(range(dim - 1)) + ["xn"]


def _axis_alpha(axis, order: int, dim: int) -> MultiIndex:
    e = [0] * dim
    e[-1 if axis == "xn" else axis] = order
    return MultiIndex(tuple(e))


def _deriv(u, alpha, t_order=0):
    if isinstance(u, Expression):
        return differentiate(u, alpha, t_order)
    return u.derivative(alpha, t_order)


# --------------------------------------------------------------------------
# the two sides of the main estimate
# --------------------------------------------------------------------------

def generating_terms(u, params: SpaceParams, window: Window,
                     geometry: DomainGeometry = HALF_SPACE,
                     parabolic: bool | None = None) -> list[Term]:
    """Directional weighted seminorms of the pure m-th derivatives plus the
    time seminorm of D_t u; their sum is the generating side."""
    if parabolic is None:
        parabolic = isinstance(u, Expression) and depends_on_time(u)
    m, n, g = params.m, params.n, params.gamma
    terms = []
    for axis in _axes(window.dim):
        alpha = _axis_alpha(axis, m, window.dim)
        d = _deriv(u, alpha)
        est = weighted_seminorm(d, window, exponent=g,
                                weight_power=params.weight_power,
                                pairs="axis", axis=axis, pre_weight=n,
                                geometry=geometry)
        terms.append(Term(f"rhs:ax{axis}", "rhs", est.value, est,
                          {"alpha": list(alpha.entries), "pre_weight": n,
                           "exponent": g}))
    if parabolic:
        dt = _deriv(u, MultiIndex((0,) * window.dim), 1)
        est = time_seminorm(dt, window, beta=g / m, geometry=geometry)
        terms.append(Term("rhs:time", "rhs", est.value, est,
                          {"exponent": g / m}))
    return terms


def derived_group_terms(u, params: SpaceParams, window: Window,
                        geometry: DomainGeometry = HALF_SPACE,
                        parabolic: bool | None = None) -> list[Term]:
    """All derived-side terms of the main estimate for one window."""
    if parabolic is None:
        parabolic = isinstance(u, Expression) and depends_on_time(u)
    m, n, g = params.m, params.n, params.gamma
    om = params.omega
    wp = params.weight_power
    dim = window.dim
    zeros = MultiIndex((0,) * dim)
    terms: list[Term] = []

    # groups 1 and 2: weighted seminorms of x^{n-j} D^alpha u, |alpha| = m-j
    for j in range(0, math.floor(n) + 1):
        for alpha in multiindices(m - j, dim):
            d = _deriv(u, alpha)
            meta = {"j": j, "alpha": list(alpha.entries)}
            est = weighted_seminorm(d, window, exponent=g, weight_power=wp,
                                    pairs="isotropic", pre_weight=n - j,
                                    geometry=geometry)
            terms.append(Term(f"g1:j{j}:{_alabel(alpha)}:space", "g1",
                              est.value, est, dict(meta, exponent=g,
                                                   pre_weight=n - j)))
            if parabolic:
                est = time_seminorm(d, window, beta=g / m,
                                    pre_weight=n - j, geometry=geometry)
                terms.append(Term(f"g1:j{j}:{_alabel(alpha)}:time", "g1",
                                  est.value, est, dict(meta, exponent=g / m,
                                                       pre_weight=n - j)))
                est = time_seminorm(d, window, beta=(g + j) / m,
                                    pre_weight=n - j * om, geometry=geometry)
                terms.append(Term(f"g2:j{j}:{_alabel(alpha)}", "g2",
                                  est.value, est,
                                  dict(meta, exponent=(g + j) / m,
                                       pre_weight=n - j * om)))

    # group 3: D_t u measured like the group-1 integrands
    if parabolic:
        dt = _deriv(u, zeros, 1)
        est = weighted_seminorm(dt, window, exponent=g, weight_power=wp,
                                pairs="isotropic", geometry=geometry)
        terms.append(Term("g3:space", "g3", est.value, est, {"exponent": g}))
        est = time_seminorm(dt, window, beta=g / m, geometry=geometry)
        terms.append(Term("g3:time", "g3", est.value, est, {"exponent": g / m}))

    # groups 4 and 5: tangential regularity of lower derivatives
    if dim >= 2:
        for grp, smooth, wpow in (("g4", m - n + (1.0 - om) * g, 0.0),
                                  ("g5", m - n + g, wp)):
            terms.extend(_tangential_group(u, grp, smooth, wpow, window,
                                           geometry, params))

    # group 6: time regularity of low-order derivatives
    if parabolic and m - n >= 1:
        for j in range(1, math.floor(m - n) + 1):
            beta = 1.0 - j / (m - n) + g / m
            for alpha in multiindices(j, dim):
                d = _deriv(u, alpha)
                est = time_seminorm(d, window, beta=beta, geometry=geometry)
                terms.append(Term(f"g6:j{j}:{_alabel(alpha)}", "g6",
                                  est.value, est,
                                  {"j": j, "alpha": list(alpha.entries),
                                   "exponent": beta}))
    return terms


def _tangential_group(u, grp, smooth, weight_power, window, geometry, params):
    """Terms <D^{alpha'} D^j u> over tangential pairs at total smoothness
    ``smooth``; integer smoothness switches to second differences."""
    dim = window.dim
    out = []
    frac = smooth - math.floor(smooth)
    integer_edge = frac == 0.0
    top = int(math.floor(smooth)) - (1 if integer_edge else 0)
    jmax = min(int(math.floor(params.m - params.n)), top)
    for j in range(0, jmax + 1):
        for aprime in multiindices(top - j, dim - 1):
            alpha = MultiIndex(aprime.entries + (j,))
            d = _deriv(u, alpha)
            meta = {"j": j, "alpha": list(alpha.entries), "smoothness": smooth,
                    "integer_edge": integer_edge}
            if integer_edge:
                est = kth_difference_seminorm(
                    d, window, k=2, exponent=1.0, weight_power=weight_power,
                    convention="max", pairs="xprime", geometry=geometry)
                label = f"{grp}:j{j}:{_alabel(alpha)}:zyg"
                meta["exponent"] = 1.0
            else:
                est = weighted_seminorm(d, window, exponent=frac,
                                        weight_power=weight_power,
                                        pairs="xprime", geometry=geometry)
                label = f"{grp}:j{j}:{_alabel(alpha)}"
                meta["exponent"] = frac
            out.append(Term(label, grp, est.value, est, meta))
    return out


# --------------------------------------------------------------------------
# composite norms
# --------------------------------------------------------------------------

NORM_VARIANTS = ("full", "full_all", "generating", "generating_mixed", "domain")


def composite_norm(u, params: SpaceParams, window: Window, variant: str,
                   geometry: DomainGeometry = HALF_SPACE,
                   parabolic: bool | None = None) -> dict:
    """One of the equivalent norms as a labeled term breakdown.

    full:             sup|u| + lower unweighted Holder norms + weighted
                      norms of x^{n-j} D^alpha u excluding the pure
                      boundary derivative of order m-n
    full_all:         same, including that derivative
    generating:       sup|u| + the generating side
    generating_mixed: generating + the pure boundary derivative seminorm
    domain:           sup|u| + weighted isotropic seminorms of all
                      d^n D^alpha u, |alpha| = m (curved domains)
    """
    if variant not in NORM_VARIANTS:
        raise ValueError(f"unknown norm variant {variant!r}")
    if parabolic is None:
        parabolic = isinstance(u, Expression) and depends_on_time(u)
    m, n, g = params.m, params.n, params.gamma
    wp = params.weight_power
    dim = window.dim
    terms: list[Term] = []

    est = sup_norm(u, window, geometry)
    terms.append(Term("sup:u", "sup", est.value, est, {}))

    if variant in ("generating", "generating_mixed"):
        terms.extend(generating_terms(u, params, window, geometry, parabolic))
        if variant == "generating_mixed":
            if not params.integer_n:
                raise ValueError("the mixed variant applies to integer n")
            alpha = _axis_alpha("xn", m - int(n), dim)
            d = _deriv(u, alpha)
            est = weighted_seminorm(d, window, exponent=g, weight_power=wp,
                                    pairs="axis", axis="xn", geometry=geometry)
            terms.append(Term("mixed:dxn", "mixed", est.value, est,
                              {"alpha": list(alpha.entries)}))
    elif variant == "domain":
        for alpha in multiindices(m, dim):
            d = _deriv(u, alpha)
            est = weighted_seminorm(d, window, exponent=g, weight_power=wp,
                                    pairs="isotropic", pre_weight=n,
                                    geometry=geometry)
            terms.append(Term(f"top:{_alabel(alpha)}", "top", est.value, est,
                              {"alpha": list(alpha.entries)}))
        if parabolic:
            dt = _deriv(u, MultiIndex((0,) * dim), 1)
            est = time_seminorm(dt, window, beta=g / m, geometry=geometry)
            terms.append(Term("rhs:time", "rhs", est.value, est, {}))
    else:
        for order in range(1, math.ceil(m - n)):
            for alpha in multiindices(order, dim):
                d = _deriv(u, alpha)
                est = sup_norm(d, window, geometry)
                terms.append(Term(f"low:{_alabel(alpha)}:sup", "low",
                                  est.value, est, {}))
                est = weighted_seminorm(d, window, exponent=g, weight_power=0.0,
                                        pairs="isotropic", geometry=geometry)
                terms.append(Term(f"low:{_alabel(alpha)}:space", "low",
                                  est.value, est, {"exponent": g}))
                if parabolic:
                    est = time_seminorm(d, window, beta=g / m, geometry=geometry)
                    terms.append(Term(f"low:{_alabel(alpha)}:time", "low",
                                      est.value, est, {"exponent": g / m}))
        for j in range(0, math.floor(n) + 1):
            for alpha in multiindices(m - j, dim):
                if variant == "full" and alpha.tangential_order == 0 \
                        and alpha.last == m - n:
                    continue
                d = _deriv(u, alpha)
                base = f"top:j{j}:{_alabel(alpha)}"
                est = sup_norm(d, window, geometry, pre_weight=n - j)
                terms.append(Term(base + ":sup", "top", est.value, est,
                                  {"j": j, "pre_weight": n - j}))
                est = weighted_seminorm(d, window, exponent=g, weight_power=wp,
                                        pairs="isotropic", pre_weight=n - j,
                                        geometry=geometry)
                terms.append(Term(base + ":space", "top", est.value, est,
                                  {"j": j, "exponent": g, "pre_weight": n - j}))
                if parabolic:
                    est = time_seminorm(d, window, beta=g / m,
                                        pre_weight=n - j, geometry=geometry)
                    terms.append(Term(base + ":time", "top", est.value, est,
                                      {"j": j, "exponent": g / m,
                                       "pre_weight": n - j}))

    total = float(np.sum([t.value for t in terms]))
    flags = {
        "nonfinite_skipped": int(sum(t.estimate.nonfinite_skipped
                                     for t in terms if t.estimate)),
        "subsampled": any(t.estimate.subsampled for t in terms if t.estimate),
    }
    return {"variant": variant, "terms": terms, "total": total, "flags": flags}
