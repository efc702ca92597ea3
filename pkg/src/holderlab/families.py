"""Curated test-function families for the verification checks.

Members are built from tensor cutoffs, monomials, boundary powers and the
iterated log, so every derivative the checks need exists in closed form.
Cutoff smoothness always exceeds the differentiation order in play.  Names
are stable identifiers that end up in reports, so keep them short.
"""

from __future__ import annotations

import math

from .fields import (
    BoundaryPower,
    Const,
    Cutoff1D,
    Expression,
    IterLog,
    Mono,
    RadialCutoff,
    SpaceParams,
    TimeMono,
    mk_product,
    mk_scale,
    mk_sum,
)
from .operators import BoundaryFunction
from .windows import DomainGeometry

__all__ = [
    "bump",
    "time_bump",
    "admissible_family",
    "counterexample_member",
    "iff_members",
    "kdiff_members",
    "holder_graded_members",
    "eps_member",
    "interpolation_member",
    "small_time_members",
    "envelope_member",
    "disk_members",
    "boundary_family",
    "gauge_members",
]

_R_IN = 0.9
_R_OUT = 1.4


def bump(params: SpaceParams, dim: int = 2) -> Expression:
    """Tensor-product spatial cutoff, identically 1 near the origin."""
    order = params.m + 2
    factors = [Cutoff1D(i, 0.0, _R_IN, _R_OUT, order) for i in range(dim - 1)]
    factors.append(Cutoff1D("xn", 0.0, _R_IN, _R_OUT, order))
    return mk_product(factors)


def time_bump(params: SpaceParams) -> Expression:
    return Cutoff1D("t", 0.0, _R_IN, _R_OUT, params.m + 2)


def _graded_power(params: SpaceParams) -> tuple[float, Expression]:
    """Boundary profile with the critical regularity: x_N^{m-n} off the
    integers, one order higher at integer n where the pure power would sit
    outside the space."""
    p = params.m - params.n + (1.0 if params.integer_n else 0.0)
    return p, BoundaryPower(p)


def admissible_family(params: SpaceParams, dim: int = 2):
    """Six compactly supported members exercising tangential, boundary,
    mixed and time behavior."""
    eta = bump(params, dim)
    eta_t = time_bump(params)
    m = params.m
    p, prof = _graded_power(params)
    return [
        (f"tang-x1^{m}", mk_product([eta, Mono(0, m)])),
        (f"bdry-xn^{p:g}", mk_product([eta, prof])),
        (f"bdry-xn^{m}", mk_product([eta, BoundaryPower(float(m))])),
        (f"mixed-x1-xn^{p:g}", mk_product([eta, Mono(0, 1), prof])),
        ("time-t-x1", mk_product([eta, eta_t, TimeMono(1), Mono(0, 1)])),
        (f"time-t2-xn^{p:g}", mk_product([eta, eta_t, TimeMono(2), prof])),
    ]


def counterexample_member(params: SpaceParams) -> Expression:
    """x_1^2 x_N^{2-n}: annihilated by every generating seminorm while the
    mixed second derivative grows without bound."""
    if params.m != 2 or params.n >= 1:
        raise ValueError("the counterexample lives at m = 2, n < 1")
    return mk_product([Mono(0, 2), BoundaryPower(2.0 - params.n)])


def iff_members(params: SpaceParams):
    """The boundary-vanishing and non-vanishing pair for integer n.

    Both carry only a tangential cutoff; the window already truncates the
    boundary direction, and a cutoff there would bury the near-boundary
    signal of the k-th derivative under its own derivative bulk.
    """
    if not params.integer_n or params.n < 1:
        raise ValueError("the dichotomy concerns integer n >= 1")
    eta = Cutoff1D(0, 0.0, _R_IN, _R_OUT, params.m + 2)
    k = int(round(params.m - params.n))
    vanish = mk_product([eta, BoundaryPower(float(k + 1))])
    stick = mk_product([eta, IterLog(k)])
    return [("vanishing", vanish), ("nonvanishing", stick)]


def kdiff_members(params: SpaceParams):
    eta = bump(params)
    p, prof = _graded_power(params)
    return [
        ("constant", Const(1.0)),
        (f"graded-xn^{p:g}", mk_product([eta, prof])),
    ]


def line_member(params: SpaceParams) -> Expression:
    """One-dimensional x^{m+gamma'} profile, gamma' a bit under gamma."""
    gp = 0.9 * params.gamma
    cut = Cutoff1D("xn", 0.0, _R_IN, _R_OUT, params.m + 2)
    return mk_product([cut, BoundaryPower(params.m + gp)])


def holder_graded_members(params: SpaceParams):
    """Members for the pure-seminorm comparisons (embedding, conventions):
    a constant, the critically graded power, and a smooth tangential one."""
    eta = bump(params)
    q = (1.0 - params.omega) * params.gamma
    return [
        ("constant", Const(1.0)),
        (f"graded-xn^{q:g}", mk_product([eta, BoundaryPower(q)])),
        ("tangential-x1", mk_product([eta, Mono(0, 1)])),
    ]


def eps_member(params: SpaceParams) -> Expression:
    q = (1.0 - params.omega) * params.gamma
    return mk_product([bump(params), BoundaryPower(q)])


def interpolation_member(params: SpaceParams) -> Expression:
    eta = bump(params)
    return mk_product([eta, mk_sum([Mono(0, params.m),
                                    BoundaryPower(params.m - params.n)])])


def small_time_members(params: SpaceParams):
    """t^2-flat members; both vanish with their first time derivative at
    t = 0, which the small-time statements require."""
    eta = bump(params)
    eta_t = time_bump(params)
    p, prof = _graded_power(params)
    return [
        (f"t2-xn^{p:g}", mk_product([eta, eta_t, TimeMono(2), prof])),
        ("t2-x1", mk_product([eta, eta_t, TimeMono(2), Mono(0, 1)])),
    ]


def envelope_member(params: SpaceParams) -> Expression:
    p, prof = _graded_power(params)
    return mk_product([bump(params), prof])


def disk_members(params: SpaceParams, geometry: DomainGeometry):
    """Members adapted to a curved boundary: a radial bump times the
    critical power of the boundary distance, and a low-degree polynomial."""
    if geometry.kind != "disk":
        raise ValueError("disk members need a disk geometry")
    d = geometry.distance_expression()
    from .fields import PowerOf
    rb = RadialCutoff(tuple(geometry.center), 0.5 * geometry.radius,
                      0.9 * geometry.radius, params.m + 2)
    p = params.m - params.n + (1.0 if params.integer_n else 0.0)
    members = [(f"radial-d^{p:g}", mk_product([rb, PowerOf(d, p)]))]
    deg = math.ceil(params.m - params.n) - 1
    if deg >= 0:
        poly = mk_sum([Const(1.0)] +
                      [mk_scale(0.25 ** k, Mono(0, k))
                       for k in range(1, deg + 1)])
        members.append((f"poly-deg{deg}", poly))
    return members


def boundary_family():
    """Compactly supported boundary data for the extension checks."""
    return [
        ("cosine", BoundaryFunction("cosine", frequency=2.0,
                                    plateau=40.0, taper=10.0)),
        ("gaussian", BoundaryFunction("gaussian", sigma=0.8,
                                      plateau=40.0, taper=10.0)),
        ("ramp", BoundaryFunction("polynomial", coeffs=(1.0, 0.5, 0.25),
                                  plateau=40.0, taper=10.0)),
    ]


def gauge_members(params: SpaceParams, coefficients=(-3.0, 1.0, 5.0)):
    """Pure gauge profiles c * x_N^{m-n}; recovery must be essentially exact."""
    if params.integer_n:
        raise ValueError("pure powers are gauge profiles only off the integers")
    return [(f"c={c:g}", mk_scale(c, BoundaryPower(params.m - params.n)))
            for c in coefficients]
