"""Exact symbolic fields on the closed half-space H = {x : x_N >= 0} and on
bounded domains, with time as an extra scalar variable.

The degenerate problems this package studies involve functions built from a
small closed algebra of terms:

* polynomials in the tangential coordinates ``x_1 .. x_{N-1}`` and in ``t``,
* real powers ``x_N**a`` of the distinguished boundary coordinate,
* iterated antiderivatives ``L_k`` of ``ln x_N`` (``L_0 = ln``),
* compactly supported piecewise-polynomial cutoffs (1-d or radial),
* real powers of a strictly positive inner expression (used for boundary
  distance weights on curved domains),

closed under sums, products, scalar multiples and differentiation.  Keeping
the algebra symbolic makes weighted integrands exact: products collect the
total ``x_N`` exponent before any number is formed, so e.g.
``x_N**n * x_N**(-n) * c`` evaluates to ``c`` on the boundary instead of
``0 * inf``.

Evaluation is vectorized over numpy point batches.  Points are arrays of
shape ``(P, N)`` (or a single ``(N,)`` point); the boundary coordinate is
always the last one.  Time enters as a separate scalar/array argument.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SpaceParams",
    "MultiIndex",
    "Expression",
    "Const",
    "Mono",
    "BoundaryPower",
    "IterLog",
    "TimeMono",
    "Cutoff1D",
    "RadialCutoff",
    "PowerOf",
    "Sum",
    "Product",
    "Scale",
    "differentiate",
    "evaluate",
    "dilate",
    "preweight_boundary",
    "depends_on_time",
    "fd_consistency",
    "iterlog_constants",
    "iterlog_value",
    "multiindices",
    "expression_to_dict",
    "expression_from_dict",
    "dumps",
    "loads",
]


# --------------------------------------------------------------------------
# parameters
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpaceParams:
    """Order/weight/exponent triple (m, n, gamma) of a weighted space.

    ``m`` is the derivative order (positive integer), ``n`` the boundary
    weight power with ``0 <= n < m`` (``n = 0`` is admitted so the divergence
    examples can be run at zero weight), and ``gamma`` the Holder exponent in
    ``(0, 1)``.  The anisotropy ratio is ``omega = n / m``.

    For noninteger ``n`` the admissible range of exponents is constrained:
    ``(1 - omega) * gamma < min(frac(n), 1 - frac(n))``.
    """

    m: int
    n: float
    gamma: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError("m must be a positive integer")
        if not (0.0 <= self.n < self.m):
            raise ValueError("n must satisfy 0 <= n < m")
        if not (0.0 < self.gamma < 1.0):
            raise ValueError("gamma must lie in (0, 1)")
        if not self.integer_n:
            gap = min(self.frac_n, 1.0 - self.frac_n)
            if (1.0 - self.omega) * self.gamma >= gap:
                raise ValueError(
                    "noninteger n requires (1-omega)*gamma < min(frac(n), 1-frac(n)); "
                    f"got {(1.0 - self.omega) * self.gamma:.6g} >= {gap:.6g}"
                )

    @property
    def omega(self) -> float:
        return self.n / self.m

    @property
    def integer_n(self) -> bool:
        return float(self.n) == float(int(self.n))

    @property
    def frac_n(self) -> float:
        return self.n - math.floor(self.n)

    @property
    def weight_power(self) -> float:
        """Power ``omega * gamma`` carried by the seminorm weight."""
        return self.omega * self.gamma


@dataclass(frozen=True)
class MultiIndex:
    """Spatial derivative multi-index; the last entry acts on x_N."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if any(int(e) != e or e < 0 for e in self.entries):
            raise ValueError("multi-index entries must be nonnegative integers")
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @property
    def order(self) -> int:
        return sum(self.entries)

    @property
    def last(self) -> int:
        """Component acting on the boundary coordinate."""
        return self.entries[-1]

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def tangential_order(self) -> int:
        return self.order - self.last

    def __iter__(self):
        return iter(self.entries)


def multiindices(total: int, n_axes: int) -> list[MultiIndex]:
    """All multi-indices over ``n_axes`` axes with |alpha| == total."""
    if n_axes == 1:
        return [MultiIndex((total,))]
    out = []
    for head in range(total + 1):
        for rest in multiindices(total - head, n_axes - 1):
            out.append(MultiIndex((head,) + rest.entries))
    return out


# --------------------------------------------------------------------------
# iterated logarithm
# --------------------------------------------------------------------------

def iterlog_constants(k: int) -> list[float]:
    """Constants c_0..c_k with L_j(x) = x^j/j! * ln x - c_j x^j.

    The family is fixed by L_0 = ln and d/dx L_j = L_{j-1}, L_j(0) = 0,
    which forces c_j = c_{j-1}/j + 1/(j * j!).
    """
    cs = [0.0]
    for j in range(1, k + 1):
        cs.append(cs[j - 1] / j + 1.0 / (j * math.factorial(j)))
    return cs


def iterlog_value(k: int, x):
    """Evaluate L_k at x >= 0 (vectorized); L_k(0) = 0 for k >= 1."""
    x = np.asarray(x, dtype=float)
    if k == 0:
        with np.errstate(divide="ignore"):
            return np.where(x > 0, np.log(np.where(x > 0, x, 1.0)), -np.inf)
    c = iterlog_constants(k)[k]
    with np.errstate(divide="ignore", invalid="ignore"):
        lg = np.log(np.where(x > 0, x, 1.0))
    return np.where(x > 0, x**k / math.factorial(k) * lg - c * x**k, 0.0)


# --------------------------------------------------------------------------
# smoothstep profiles shared by the cutoff nodes
# --------------------------------------------------------------------------

def _smoothstep_coeffs(order: int) -> np.ndarray:
    """Coefficients (ascending) of the degree 2*order+1 smoothstep on [0,1].

    S'(w) = w^order (1-w)^order / B(order+1, order+1), so S rises from 0 to 1
    with its first ``order`` derivatives vanishing at both ends.
    """
    q = order
    # integrate w^q (1-w)^q term by term
    deriv = np.zeros(2 * q + 1)
    for j in range(q + 1):
        deriv[q + j] = math.comb(q, j) * (-1.0) ** j
    coeffs = np.zeros(2 * q + 2)
    coeffs[1:] = deriv / np.arange(1, 2 * q + 2)
    total = coeffs.sum()  # S(1) before normalization
    return coeffs / total


class _CutoffProfile:
    """Plateau profile G(u) in the squared-radius variable u.

    G == 1 for u <= lo, == 0 for u >= hi, and a smoothstep in between; the
    ``level``-th derivative in u is what the cutoff nodes evaluate.
    """

    _cache: dict[tuple[int, int], np.ndarray] = {}

    def __init__(self, r_in: float, r_out: float, order: int, level: int):
        self.lo = r_in * r_in
        self.hi = r_out * r_out
        self.order = order
        self.level = level
        key = (order, level)
        if key not in self._cache:
            c = _smoothstep_coeffs(order)
            for _ in range(level):
                c = c[1:] * np.arange(1, len(c))
                if len(c) == 0:
                    c = np.zeros(1)
            self._cache[key] = c
        self._coeffs = self._cache[key]
        self._slope = -1.0 / (self.hi - self.lo)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        w = (self.hi - u) * (-self._slope)
        inside = np.polynomial.polynomial.polyval(np.clip(w, 0.0, 1.0), self._coeffs)
        inside = inside * self._slope**self.level
        if self.level == 0:
            return np.where(u <= self.lo, 1.0, np.where(u >= self.hi, 0.0, inside))
        return np.where((u > self.lo) & (u < self.hi), inside, 0.0)


# --------------------------------------------------------------------------
# expression nodes
# --------------------------------------------------------------------------

def _as_points(x) -> np.ndarray:
    xa = np.asarray(x, dtype=float)
    if xa.ndim == 1:
        xa = xa[None, :]
    return xa


def _time_array(t, npts: int) -> np.ndarray:
    if t is None:
        return np.zeros(npts)
    ta = np.asarray(t, dtype=float)
    if ta.ndim == 0:
        return np.full(npts, float(ta))
    return ta


class Expression:
    """Base node; subclasses implement _eval, _diff, _diff_t, _params."""

    kind = "abstract"

    # -- algebra ----------------------------------------------------------
    def __add__(self, other):
        return mk_sum([self, _coerce(other)])

    __radd__ = __add__

    def __sub__(self, other):
        return mk_sum([self, mk_scale(-1.0, _coerce(other))])

    def __rsub__(self, other):
        return mk_sum([_coerce(other), mk_scale(-1.0, self)])

    def __mul__(self, other):
        other = _coerce(other)
        return mk_product([self, other])

    __rmul__ = __mul__

    def __neg__(self):
        return mk_scale(-1.0, self)

    # -- evaluation -------------------------------------------------------
    def evaluate(self, x, t=None):
        xa = _as_points(x)
        ta = _time_array(t, xa.shape[0])
        out = self._eval(xa, ta)
        if np.asarray(x).ndim == 1 and np.asarray(out).shape == (1,):
            return float(out[0])
        return out

    def _eval(self, x, t):  # pragma: no cover - abstract
        raise NotImplementedError

    # -- differentiation ---------------------------------------------------
    def _diff(self, axis: int, n_axes: int) -> "Expression":
        raise NotImplementedError

    def _diff_t(self) -> "Expression":
        raise NotImplementedError

    def _dilate(self, axis, factor: float) -> "Expression":
        """Substitute coordinate -> factor * coordinate; axis is an int or 't'."""
        raise NotImplementedError

    # -- serialization ------------------------------------------------------
    def _params(self) -> dict:
        return {}

    def _children(self) -> tuple["Expression", ...]:
        return ()

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self._params() == other._params()
            and self._children() == other._children()
        )

    def __hash__(self):
        return hash((self.kind, json.dumps(self._params(), sort_keys=True), self._children()))

    def __repr__(self):
        ps = ", ".join(f"{k}={v!r}" for k, v in self._params().items())
        if self._children():
            ps = ps + (", " if ps else "") + f"children={list(self._children())!r}"
        return f"{type(self).__name__}({ps})"


def _coerce(v) -> Expression:
    if isinstance(v, Expression):
        return v
    if isinstance(v, (int, float)):
        return Const(float(v))
    raise TypeError(f"cannot use {type(v)!r} in an expression")


class Const(Expression):
    kind = "const"

    def __init__(self, value: float):
        self.value = float(value)

    def _eval(self, x, t):
        return np.full(np.broadcast(x[..., 0], t).shape, self.value)

    def _diff(self, axis, n_axes):
        return Const(0.0)

    def _diff_t(self):
        return Const(0.0)

    def _dilate(self, axis, factor):
        return self

    def _params(self):
        return {"value": self.value}


class Mono(Expression):
    """Integer power of a single spatial coordinate, x_axis ** power."""

    kind = "mono"

    def __init__(self, axis: int, power: int):
        if power < 0 or int(power) != power:
            raise ValueError("monomial power must be a nonnegative integer")
        self.axis = int(axis)
        self.power = int(power)

    def _eval(self, x, t):
        v = x[..., self.axis] ** self.power
        return np.broadcast_to(v, np.broadcast(v, t).shape).copy()

    def _diff(self, axis, n_axes):
        if axis != self.axis or self.power == 0:
            return Const(0.0)
        return mk_scale(float(self.power), Mono(self.axis, self.power - 1))

    def _diff_t(self):
        return Const(0.0)

    def _dilate(self, axis, factor):
        if axis == self.axis:
            return mk_scale(factor**self.power, self)
        return self

    def _params(self):
        return {"axis": self.axis, "power": self.power}


class BoundaryPower(Expression):
    """Real power of the boundary coordinate, x_N ** power."""

    kind = "bpow"

    def __init__(self, power: float):
        self.power = float(power)

    def _eval(self, x, t):
        xn = x[..., -1]
        with np.errstate(divide="ignore"):
            v = np.where(xn > 0, xn, 1.0) ** self.power
        if self.power > 0:
            v = np.where(xn > 0, v, 0.0)
        elif self.power == 0:
            v = np.ones_like(xn)
        else:
            v = np.where(xn > 0, v, np.nan)
        return np.broadcast_to(v, np.broadcast(v, t).shape).copy()

    def _diff(self, axis, n_axes):
        if axis != n_axes - 1 or self.power == 0:
            return Const(0.0)
        return mk_scale(self.power, BoundaryPower(self.power - 1.0))

    def _diff_t(self):
        return Const(0.0)

    def _dilate(self, axis, factor):
        if axis == "xn":
            return mk_scale(factor**self.power, self)
        return self

    def _params(self):
        return {"power": self.power}


class IterLog(Expression):
    """k-th iterated antiderivative L_k of ln x_N (L_0 = ln x_N)."""

    kind = "iterlog"

    def __init__(self, k: int):
        if k < 0 or int(k) != k:
            raise ValueError("iterated-log order must be a nonnegative integer")
        self.k = int(k)

    def _eval(self, x, t):
        v = iterlog_value(self.k, x[..., -1])
        return np.broadcast_to(v, np.broadcast(v, t).shape).copy()

    def _diff(self, axis, n_axes):
        if axis != n_axes - 1:
            return Const(0.0)
        if self.k >= 1:
            return IterLog(self.k - 1)
        return BoundaryPower(-1.0)

    def _diff_t(self):
        return Const(0.0)

    def _dilate(self, axis, factor):
        if axis == "xn":
            raise ValueError("iterated logs do not dilate to algebra elements")
        return self

    def _params(self):
        return {"k": self.k}


class TimeMono(Expression):
    kind = "tmono"

    def __init__(self, power: int):
        if power < 0 or int(power) != power:
            raise ValueError("time power must be a nonnegative integer")
        self.power = int(power)

    def _eval(self, x, t):
        v = np.asarray(t, dtype=float) ** self.power
        return np.broadcast_to(v, np.broadcast(x[..., 0], v).shape).copy()

    def _diff(self, axis, n_axes):
        return Const(0.0)

    def _diff_t(self):
        if self.power == 0:
            return Const(0.0)
        return mk_scale(float(self.power), TimeMono(self.power - 1))

    def _dilate(self, axis, factor):
        if axis == "t":
            return mk_scale(factor**self.power, self)
        return self

    def _params(self):
        return {"power": self.power}


class Cutoff1D(Expression):
    """Even piecewise-polynomial cutoff in one variable.

    Equals 1 for |v - center| <= r_in, 0 for |v - center| >= r_out, with a
    degree 2*order+1 smoothstep bridge; C^order everywhere.  ``var`` selects
    the variable: a tangential axis index, "xn", or "t".  ``level`` tracks
    derivatives of the underlying profile in the squared-offset variable.
    """

    kind = "cutoff1d"

    def __init__(self, var, center: float, r_in: float, r_out: float,
                 order: int, level: int = 0):
        if not (0.0 <= r_in < r_out):
            raise ValueError("need 0 <= r_in < r_out")
        if order < 1:
            raise ValueError("cutoff smoothness order must be >= 1")
        self.var = var if var in ("xn", "t") else int(var)
        self.center = float(center)
        self.r_in = float(r_in)
        self.r_out = float(r_out)
        self.order = int(order)
        self.level = int(level)
        self._profile = _CutoffProfile(self.r_in, self.r_out, self.order, self.level)

    def _coord(self, x, t, n_axes):
        if self.var == "t":
            return np.asarray(t, dtype=float)
        if self.var == "xn":
            return x[..., -1]
        return x[..., self.var]

    def _eval(self, x, t):
        v = self._coord(x, t, x.shape[-1]) - self.center
        out = self._profile(v * v)
        return np.broadcast_to(out, np.broadcast(x[..., 0], t).shape).copy()

    def _linear_factor(self, n_axes):
        if self.var == "t":
            base = TimeMono(1)
        elif self.var == "xn":
            base = BoundaryPower(1.0)
        else:
            base = Mono(self.var, 1)
        if self.center == 0.0:
            return base
        return mk_sum([base, Const(-self.center)])

    def _bump(self, level):
        return Cutoff1D(self.var, self.center, self.r_in, self.r_out, self.order, level)

    def _diff(self, axis, n_axes):
        if self.var == "t":
            return Const(0.0)
        mine = n_axes - 1 if self.var == "xn" else self.var
        if axis != mine:
            return Const(0.0)
        return mk_product([self._bump(self.level + 1),
                           mk_scale(2.0, self._linear_factor(n_axes))])

    def _diff_t(self):
        if self.var != "t":
            return Const(0.0)
        return mk_product([self._bump(self.level + 1),
                           mk_scale(2.0, self._linear_factor(0))])

    def _dilate(self, axis, factor):
        if axis != self.var:
            return self
        if self.level != 0:
            raise ValueError("only level-0 cutoffs dilate exactly")
        return Cutoff1D(self.var, self.center / factor, self.r_in / factor,
                        self.r_out / factor, self.order, 0)

    def _params(self):
        return {"var": self.var, "center": self.center, "r_in": self.r_in,
                "r_out": self.r_out, "order": self.order, "level": self.level}


class RadialCutoff(Expression):
    """Radial cutoff over all spatial coordinates.

    1 inside |x - center| <= r_in, 0 outside r_out, C^order in between.  The
    profile lives in u = |x - center|^2, so derivatives stay inside the
    algebra: D_i eta = G'(u) * 2 (x_i - c_i).
    """

    kind = "radial_cutoff"

    def __init__(self, center: Sequence[float], r_in: float, r_out: float,
                 order: int, level: int = 0):
        if not (0.0 <= r_in < r_out):
            raise ValueError("need 0 <= r_in < r_out")
        if order < 1:
            raise ValueError("cutoff smoothness order must be >= 1")
        self.center = tuple(float(c) for c in center)
        self.r_in = float(r_in)
        self.r_out = float(r_out)
        self.order = int(order)
        self.level = int(level)
        self._profile = _CutoffProfile(self.r_in, self.r_out, self.order, self.level)

    def _eval(self, x, t):
        if x.shape[-1] != len(self.center):
            raise ValueError("point dimension does not match cutoff center")
        u = np.zeros(x.shape[:-1])
        for i, c in enumerate(self.center):
            d = x[..., i] - c
            u = u + d * d
        out = self._profile(u)
        return np.broadcast_to(out, np.broadcast(x[..., 0], t).shape).copy()

    def _diff(self, axis, n_axes):
        c = self.center[axis]
        if axis == n_axes - 1:
            base = BoundaryPower(1.0)
        else:
            base = Mono(axis, 1)
        lin = base if c == 0.0 else mk_sum([base, Const(-c)])
        return mk_product([
            RadialCutoff(self.center, self.r_in, self.r_out, self.order, self.level + 1),
            mk_scale(2.0, lin),
        ])

    def _diff_t(self):
        return Const(0.0)

    def _dilate(self, axis, factor):
        if axis == "t":
            return self
        raise ValueError("radial cutoffs do not dilate anisotropically; "
                         "use products of 1-d cutoffs")

    def _params(self):
        return {"center": list(self.center), "r_in": self.r_in,
                "r_out": self.r_out, "order": self.order, "level": self.level}


class PowerOf(Expression):
    """Real power of a nonnegative inner expression (boundary-distance weights)."""

    kind = "powerof"

    def __init__(self, base: Expression, power: float):
        self.base = base
        self.power = float(power)

    def _eval(self, x, t):
        b = self.base._eval(x, t)
        if self.power == 0:
            return np.where(np.isnan(b), np.nan, 1.0)
        if float(self.power).is_integer():
            # integral powers are plain polynomials / rational functions,
            # valid on either sign of the base
            with np.errstate(divide="ignore", invalid="ignore"):
                v = b ** self.power
            if self.power < 0:
                v = np.where(b == 0, np.nan, v)
            return v
        with np.errstate(divide="ignore", invalid="ignore"):
            v = np.where(b > 0, b, 1.0) ** self.power
        if self.power > 0:
            return np.where(b > 0, v, np.where(b == 0, 0.0, np.nan))
        return np.where(b > 0, v, np.nan)

    def _diff(self, axis, n_axes):
        if self.power == 0.0:
            return Const(0.0)
        db = self.base._diff(axis, n_axes)
        return mk_scale(self.power, mk_product([PowerOf(self.base, self.power - 1.0), db]))

    def _diff_t(self):
        if self.power == 0.0:
            return Const(0.0)
        db = self.base._diff_t()
        return mk_scale(self.power, mk_product([PowerOf(self.base, self.power - 1.0), db]))

    def _dilate(self, axis, factor):
        return PowerOf(self.base._dilate(axis, factor), self.power)

    def _params(self):
        return {"power": self.power}

    def _children(self):
        return (self.base,)


class Sum(Expression):
    kind = "sum"

    def __init__(self, children: Iterable[Expression]):
        self.children = tuple(children)

    def _eval(self, x, t):
        out = np.zeros(np.broadcast(x[..., 0], t).shape)
        for c in self.children:
            out = out + c._eval(x, t)
        return out

    def _diff(self, axis, n_axes):
        return mk_sum([c._diff(axis, n_axes) for c in self.children])

    def _diff_t(self):
        return mk_sum([c._diff_t() for c in self.children])

    def _dilate(self, axis, factor):
        return mk_sum([c._dilate(axis, factor) for c in self.children])

    def _children(self):
        return self.children


class Scale(Expression):
    kind = "scale"

    def __init__(self, coeff: float, child: Expression):
        self.coeff = float(coeff)
        self.child = child

    def _eval(self, x, t):
        return self.coeff * self.child._eval(x, t)

    def _diff(self, axis, n_axes):
        return mk_scale(self.coeff, self.child._diff(axis, n_axes))

    def _diff_t(self):
        return mk_scale(self.coeff, self.child._diff_t())

    def _dilate(self, axis, factor):
        return mk_scale(self.coeff, self.child._dilate(axis, factor))

    def _params(self):
        return {"coeff": self.coeff}

    def _children(self):
        return (self.child,)


class Product(Expression):
    """Product node with canonical boundary-exponent collection.

    Construction flattens nested products, folds scalar factors into a single
    coefficient, merges every BoundaryPower factor into one total exponent and
    merges PowerOf factors sharing the same base.  On the boundary the
    canonical limit uses the combined order of the power and iterated-log
    factors: positive order -> 0, zero order without logs -> the remaining
    finite product, anything else -> NaN (non-finite marker).  The rule
    assumes the remaining factors are boundary-finite; sums of singular terms
    should be pre-distributed (see ``preweight_boundary``).
    """

    kind = "product"

    def __init__(self, children: Iterable[Expression]):
        coeff = 1.0
        bpow = 0.0
        logs: list[IterLog] = []
        rest: list[Expression] = []
        powers: list[PowerOf] = []
        stack = list(children)
        while stack:
            c = stack.pop(0)
            if isinstance(c, Product):
                coeff *= c.coeff
                bpow += c.bpow
                logs.extend(c.logs)
                stack = list(c.rest) + stack
            elif isinstance(c, Scale):
                coeff *= c.coeff
                stack.insert(0, c.child)
            elif isinstance(c, Const):
                coeff *= c.value
            elif isinstance(c, BoundaryPower):
                bpow += c.power
            elif isinstance(c, IterLog):
                logs.append(c)
            elif isinstance(c, PowerOf):
                powers.append(c)
            else:
                rest.append(c)
        merged: list[PowerOf] = []
        for p in powers:
            for i, q in enumerate(merged):
                if q.base == p.base:
                    merged[i] = PowerOf(q.base, q.power + p.power)
                    break
            else:
                merged.append(p)
        rest.extend(p for p in merged if p.power != 0.0)
        self.coeff = coeff
        self.bpow = bpow
        self.logs = tuple(logs)
        self.rest = tuple(rest)

    @property
    def factors(self) -> tuple[Expression, ...]:
        fs: list[Expression] = []
        if self.bpow != 0.0:
            fs.append(BoundaryPower(self.bpow))
        fs.extend(self.logs)
        fs.extend(self.rest)
        return tuple(fs)

    def _eval(self, x, t):
        xn = x[..., -1]
        shape = np.broadcast(x[..., 0], t).shape
        out = np.full(shape, self.coeff)
        if self.coeff == 0.0:
            return out
        for f in self.rest:
            out = out * f._eval(x, t)
        if self.bpow != 0.0:
            with np.errstate(divide="ignore"):
                pw = np.where(xn > 0, xn, 1.0) ** self.bpow
            out = out * np.broadcast_to(pw, shape)
        with np.errstate(invalid="ignore"):
            for lg in self.logs:
                out = out * lg._eval(x, t)
        mask = np.broadcast_to(xn == 0, shape)
        if np.any(mask) and (self.bpow != 0.0 or self.logs):
            order = self.bpow + sum(lg.k for lg in self.logs)
            if order > 0:
                out = np.where(mask, 0.0, out)
            else:
                out = np.where(mask, np.nan, out)
        return out

    def _diff(self, axis, n_axes):
        terms = []
        fs = self.factors
        for i, f in enumerate(fs):
            df = f._diff(axis, n_axes)
            if isinstance(df, Const) and df.value == 0.0:
                continue
            terms.append(mk_product([df] + [g for j, g in enumerate(fs) if j != i]))
        return mk_scale(self.coeff, mk_sum(terms))

    def _diff_t(self):
        terms = []
        fs = self.factors
        for i, f in enumerate(fs):
            df = f._diff_t()
            if isinstance(df, Const) and df.value == 0.0:
                continue
            terms.append(mk_product([df] + [g for j, g in enumerate(fs) if j != i]))
        return mk_scale(self.coeff, mk_sum(terms))

    def _dilate(self, axis, factor):
        fs = [f._dilate(axis, factor) for f in self.factors]
        return mk_scale(self.coeff, mk_product(fs))

    def _params(self):
        return {"coeff": self.coeff}

    def _children(self):
        return self.factors


# --------------------------------------------------------------------------
# smart constructors (light simplification keeps derivative trees small)
# --------------------------------------------------------------------------

def mk_sum(children: Sequence[Expression]) -> Expression:
    flat: list[Expression] = []
    const = 0.0
    for c in children:
        if isinstance(c, Sum):
            flat.extend(c.children)
        elif isinstance(c, Const):
            const += c.value
        else:
            flat.append(c)
    if const != 0.0:
        flat.append(Const(const))
    if not flat:
        return Const(0.0)
    if len(flat) == 1:
        return flat[0]
    return Sum(flat)


def mk_scale(coeff: float, child: Expression) -> Expression:
    if coeff == 0.0:
        return Const(0.0)
    if isinstance(child, Const):
        return Const(coeff * child.value)
    if isinstance(child, Scale):
        return mk_scale(coeff * child.coeff, child.child)
    if coeff == 1.0:
        return child
    if isinstance(child, Product):
        p = Product(child.factors)
        p.coeff = child.coeff * coeff
        return p
    return Scale(coeff, child)


def mk_product(children: Sequence[Expression]) -> Expression:
    p = Product(children)
    if p.coeff == 0.0:
        return Const(0.0)
    if not p.logs and not p.rest:
        if p.bpow == 0.0:
            return Const(p.coeff)
        if p.coeff == 1.0:
            return BoundaryPower(p.bpow)
    if p.coeff == 1.0 and p.bpow == 0.0 and not p.logs and len(p.rest) == 1:
        return p.rest[0]
    return p


# --------------------------------------------------------------------------
# module-level operations
# --------------------------------------------------------------------------

def depends_on_time(expr: Expression) -> bool:
    """True when the expression has any genuine time dependence."""
    if isinstance(expr, TimeMono):
        return expr.power > 0
    if isinstance(expr, Cutoff1D):
        return expr.var == "t"
    return any(depends_on_time(c) for c in expr._children())


def preweight_boundary(expr: Expression, weight: Expression | float) -> Expression:
    """Multiply by a boundary weight, distributing over sums and scales.

    ``weight`` is a power of the boundary distance: a float exponent (meaning
    ``x_N ** p``) or an explicit weight expression such as ``PowerOf(d, p)``
    on curved domains.  Distribution lets each summand collect its total
    exponent, so weighted integrands stay finite up to the boundary whenever
    they are finite mathematically.
    """
    if isinstance(weight, (int, float)):
        if float(weight) == 0.0:
            return expr
        weight = BoundaryPower(float(weight))

    def rec(e: Expression) -> Expression:
        if isinstance(e, Sum):
            return mk_sum([rec(c) for c in e.children])
        if isinstance(e, Scale):
            return mk_scale(e.coeff, rec(e.child))
        return mk_product([weight, e])

    return rec(expr)


def differentiate(expr: Expression, alpha, t_order: int = 0) -> Expression:
    """Exact derivative D^alpha D_t^{t_order} of an expression.

    ``alpha`` is a MultiIndex (or plain tuple) over the spatial axes; its last
    component acts on the boundary coordinate.
    """
    if not isinstance(alpha, MultiIndex):
        alpha = MultiIndex(tuple(alpha))
    out = expr
    for axis, k in enumerate(alpha.entries):
        for _ in range(k):
            out = out._diff(axis, alpha.dim)
    for _ in range(t_order):
        out = out._diff_t()
    return out


def evaluate(expr: Expression, x, t=None):
    """Evaluate on a point batch; see the module docstring for conventions."""
    return expr.evaluate(x, t)


def dilate(expr: Expression, axis, factor: float) -> Expression:
    """Exact coordinate substitution v(x) = u(..., factor * x_axis, ...).

    ``axis`` is a tangential axis index, "xn" for the boundary coordinate, or
    "t".  Raises for nodes that do not dilate inside the algebra (iterated
    logs, radial cutoffs under anisotropic scaling).
    """
    return expr._dilate(axis, float(factor))


def fd_consistency(expr: Expression, alpha, t_order: int, points, times=None,
                   h: float = 1e-4) -> float:
    """Max abs deviation between the symbolic derivative and nested central
    differences at the given interior probe points."""
    if not isinstance(alpha, MultiIndex):
        alpha = MultiIndex(tuple(alpha))
    pts = _as_points(points)
    ts = _time_array(times, pts.shape[0])

    def fd_eval(x, t, axes_left, t_left):
        if t_left > 0:
            return (fd_eval(x, t + h, axes_left, t_left - 1)
                    - fd_eval(x, t - h, axes_left, t_left - 1)) / (2 * h)
        if axes_left:
            axis = axes_left[0]
            xp = x.copy()
            xm = x.copy()
            xp[:, axis] += h
            xm[:, axis] -= h
            return (fd_eval(xp, t, axes_left[1:], 0)
                    - fd_eval(xm, t, axes_left[1:], 0)) / (2 * h)
        return expr._eval(x, t)

    axes = []
    for axis, k in enumerate(alpha.entries):
        axes.extend([axis] * k)
    sym = differentiate(expr, alpha, t_order)._eval(pts, ts)
    num = fd_eval(pts.copy(), ts, axes, t_order)
    return float(np.max(np.abs(sym - num)))


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

_NODE_KINDS: dict[str, type] = {}
for _cls in (Const, Mono, BoundaryPower, IterLog, TimeMono, Cutoff1D,
             RadialCutoff, PowerOf, Sum, Scale, Product):
    _NODE_KINDS[_cls.kind] = _cls


def expression_to_dict(expr: Expression) -> dict:
    d = {"kind": expr.kind}
    d.update(expr._params())
    kids = expr._children()
    if kids:
        d["children"] = [expression_to_dict(c) for c in kids]
    return d


def expression_from_dict(d: dict) -> Expression:
    kind = d.get("kind")
    if kind not in _NODE_KINDS:
        raise ValueError(f"unknown expression node kind: {kind!r}")
    cls = _NODE_KINDS[kind]
    params = {k: v for k, v in d.items() if k not in ("kind", "children")}
    kids = [expression_from_dict(c) for c in d.get("children", [])]
    if cls is Sum:
        return Sum(kids)
    if cls is Product:
        p = Product(kids)
        p.coeff = p.coeff * params.get("coeff", 1.0)
        return p
    if cls is Scale:
        return Scale(params["coeff"], kids[0])
    if cls is PowerOf:
        return PowerOf(kids[0], params["power"])
    if cls is RadialCutoff:
        params["center"] = tuple(params["center"])
    return cls(**params)


def dumps(expr: Expression) -> str:
    return json.dumps(expression_to_dict(expr), sort_keys=True)


def loads(s: str) -> Expression:
    return expression_from_dict(json.loads(s))
