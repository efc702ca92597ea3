"""Constructive operators used by the verification checks.

* mollification along the tangential directions and time, with exact
  kernel-side derivatives;
* the boundary gauge: the constant a = lim x_N^n D_{x_N}^m u, the profile
  Q~ with x_N^n D_{x_N}^m Q~ = a, and the full polynomial gauge Q;
* pointwise growth envelopes for intermediate derivatives near x_N = 0;
* harmonic (Poisson) extension of one-dimensional boundary data, split
  into a near part in angle variables and a far part in panels;
* finite-difference weights on arbitrary nodes, used for derivatives of
  numerically defined fields.

Everything here returns either an Expression or an evaluator exposing
``evaluate(x, t)`` and ``derivative(alpha, t_order)``, so the seminorm and
norm layers can consume both interchangeably.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import (
    BoundaryPower,
    Const,
    Cutoff1D,
    Expression,
    IterLog,
    Mono,
    MultiIndex,
    SpaceParams,
    TimeMono,
    _smoothstep_coeffs,
    differentiate,
    mk_product,
    mk_scale,
    mk_sum,
    multiindices,
)
from .windows import HALF_SPACE, DomainGeometry, Window

__all__ = [
    "fd_weights",
    "iterated_log",
    "BoundaryFunction",
    "mollify",
    "MollifiedField",
    "GaugeResult",
    "FullGauge",
    "gauge_constant",
    "gauge_tilde",
    "gauge_full",
    "Envelope",
    "derivative_envelope",
    "envelope_ratio",
    "HarmonicExtension",
    "poisson_extend",
    "trace",
    "domain_distance",
]


# --------------------------------------------------------------------------
# finite differences on arbitrary nodes
# --------------------------------------------------------------------------

def fd_weights(z: float, x, m: int) -> np.ndarray:
    """Weights of finite-difference formulas on the nodes ``x``.

    Returns an array of shape (m+1, len(x)); row k gives the weights that
    approximate the k-th derivative at ``z``.  Classic recursive algorithm,
    exact for polynomials of degree len(x)-1.
    """
    x = np.asarray(x, dtype=float)
    nd = len(x)
    c = np.zeros((m + 1, nd))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0] - z
    for i in range(1, nd):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[k, i] = c1 * (k * c[k - 1, i - 1] - c5 * c[k, i - 1]) / c2
                c[0, i] = -c1 * c5 * c[0, i - 1] / c2
            for k in range(mn, 0, -1):
                c[k, j] = (c4 * c[k, j] - k * c[k - 1, j]) / c3
            c[0, j] = c4 * c[0, j] / c3
        c1 = c2
    return c


def iterated_log(k: int) -> Expression:
    """The k-fold antiderivative chain of ln x with L_k' = L_{k-1}."""
    return IterLog(k)


# --------------------------------------------------------------------------
# boundary data profiles
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryFunction:
    """One-dimensional boundary data: a named profile times a smooth window.

    The window equals 1 on |y| <= plateau and falls smoothly to 0 at
    plateau + taper, so windowed data is exactly compactly supported.
    Unwindowed profiles other than the gaussian have no usable support
    radius and cannot be fed to the Poisson integral.
    """

    profile: str
    amplitude: float = 1.0
    frequency: float = 1.0
    sigma: float = 1.0
    power: float = 1.0
    coeffs: tuple = ()
    plateau: float | None = None
    taper: float = 1.0
    window_order: int = 4

    _PROFILES = ("constant", "cosine", "gaussian", "abs_power", "polynomial")

    def __post_init__(self):
        if self.profile not in self._PROFILES:
            raise ValueError(f"unknown profile {self.profile!r}")
        if self.plateau is not None and (self.plateau < 0 or self.taper <= 0):
            raise ValueError("window needs plateau >= 0 and taper > 0")

    def value(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if self.profile == "constant":
            v = np.full_like(y, self.amplitude)
        elif self.profile == "cosine":
            v = self.amplitude * np.cos(self.frequency * y)
        elif self.profile == "gaussian":
            v = self.amplitude * np.exp(-0.5 * (y / self.sigma) ** 2)
        elif self.profile == "abs_power":
            v = self.amplitude * np.abs(y) ** self.power
        else:
            v = np.polynomial.polynomial.polyval(y, np.asarray(self.coeffs))
        return v * self._window(y)

    def _window(self, y):
        if self.plateau is None:
            return 1.0
        w = np.abs(y)
        lo, hi = self.plateau, self.plateau + self.taper
        s = np.clip((hi - w) / self.taper, 0.0, 1.0)
        ramp = np.polynomial.polynomial.polyval(
            s, _smoothstep_coeffs(self.window_order))
        return np.where(w <= lo, 1.0, np.where(w >= hi, 0.0, ramp))

    def support_radius(self) -> float | None:
        if self.plateau is not None:
            return self.plateau + self.taper
        if self.profile == "gaussian":
            return 12.0 * self.sigma
        return None

    def breakpoints(self) -> list[float]:
        pts = []
        if self.plateau is not None:
            hi = self.plateau + self.taper
            pts += [-hi, -self.plateau, self.plateau, hi]
        if self.profile == "abs_power" and not float(self.power).is_integer():
            pts.append(0.0)
        return sorted(pts)

    def resolution_scale(self) -> float:
        scale = self.taper if self.plateau is not None else math.inf
        if self.profile == "cosine":
            scale = min(scale, math.pi / (2.0 * abs(self.frequency)))
        elif self.profile == "gaussian":
            scale = min(scale, 0.5 * self.sigma)
        if not math.isfinite(scale):
            scale = 1.0
        return scale


# --------------------------------------------------------------------------
# mollification
# --------------------------------------------------------------------------

def _gauss_rule(nodes: int, _cache={}):
    if nodes not in _cache:
        _cache[nodes] = np.polynomial.legendre.leggauss(nodes)
    return _cache[nodes]


def _panel_nodes(edges: np.ndarray, nodes: int):
    """Gauss points and weights on consecutive panels given by edges."""
    g, gw = _gauss_rule(nodes)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * g[None, :]).ravel()
    wts = (half[:, None] * gw[None, :]).ravel()
    return pts, wts


class MollifiedField:
    """u averaged against a compact tensor kernel in the tangential
    directions (and optionally in time), leaving x_N untouched.

    Tangential and time derivatives land on the kernel and cost a factor
    1/eps each; normal derivatives are taken on u itself, so the object
    supports arbitrary mixed derivatives of the smoothing.
    """

    def __init__(self, u: Expression, eps: float, dim: int,
                 include_time: bool = False, order: int = 3, nodes: int = 12,
                 _ker_alpha=None, _ker_t=0):
        if not isinstance(u, Expression):
            raise TypeError("mollification needs a symbolic field")
        if eps <= 0:
            raise ValueError("eps must be positive")
        if dim < 2 and not include_time:
            raise ValueError("nothing to mollify: no tangential axes, no time")
        self.u = u
        self.eps = float(eps)
        self.dim = dim
        self.include_time = include_time
        self.order = order
        self.nodes = nodes
        self.n_tang = dim - 1
        self._ker_alpha = tuple(_ker_alpha or (0,) * self.n_tang)
        self._ker_t = int(_ker_t)
        self._grid = None
        self._kvals = None

    # node grid over the kernel support [-1, 1]^(n_tang [+ time])
    def _node_grid(self):
        if self._grid is None:
            pts, wts = _panel_nodes(np.array([-1.0, -0.5, 0.5, 1.0]),
                                    self.nodes)
            n_sm = self.n_tang + (1 if self.include_time else 0)
            grids = np.meshgrid(*([pts] * n_sm), indexing="ij")
            wgrids = np.meshgrid(*([wts] * n_sm), indexing="ij")
            z = np.stack([g.ravel() for g in grids], axis=-1)
            w = np.prod(np.stack([g.ravel() for g in wgrids], axis=-1), axis=-1)
            self._grid = (z, w)
        return self._grid

    def _kernel(self, ker_alpha, ker_t):
        factors = [Cutoff1D(i, 0.0, 0.5, 1.0, self.order)
                   for i in range(self.n_tang)]
        if self.include_time:
            factors.append(Cutoff1D("t", 0.0, 0.5, 1.0, self.order))
        base = mk_product(factors)
        alpha = MultiIndex(tuple(ker_alpha) if self.n_tang else (0,))
        return differentiate(base, alpha, ker_t)

    def _kernel_values(self):
        if self._kvals is None:
            z, w = self._node_grid()
            zx = z[:, :self.n_tang] if self.n_tang else np.zeros((len(z), 1))
            zt = z[:, -1] if self.include_time else None
            kv = self._kernel(self._ker_alpha, self._ker_t).evaluate(zx, zt)
            base = self._kernel((0,) * self.n_tang, 0).evaluate(zx, zt)
            self._kvals = (w * kv, float(np.sum(w * base)))
        return self._kvals

    def evaluate(self, x, t=None) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        squeeze = x.ndim == 1
        if squeeze:
            x = x[None, :]
        npts = len(x)
        tt = np.zeros(npts) if t is None else np.broadcast_to(
            np.asarray(t, dtype=float), (npts,)).copy()
        z, _ = self._node_grid()
        wk, norm = self._kernel_values()
        nz = len(z)
        shifted = np.repeat(x, nz, axis=0)
        for i in range(self.n_tang):
            shifted[:, i] -= self.eps * np.tile(z[:, i], npts)
        ts = np.repeat(tt, nz)
        if self.include_time:
            ts = ts - self.eps * np.tile(z[:, -1], npts)
        uv = self.u.evaluate(shifted, ts).reshape(npts, nz)
        k = sum(self._ker_alpha) + self._ker_t
        out = (uv @ wk / norm) * self.eps ** (-k)
        return out[0] if squeeze else out

    def derivative(self, alpha, t_order: int = 0) -> "MollifiedField":
        if isinstance(alpha, MultiIndex):
            alpha = alpha.entries
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.dim:
            raise ValueError("derivative order does not match the dimension")
        ker_alpha = tuple(k + a for k, a in
                          zip(self._ker_alpha, alpha[:self.n_tang]))
        rest = MultiIndex((0,) * (self.dim - 1) + (alpha[-1],))
        if self.include_time:
            ker_t = self._ker_t + t_order
            usym = differentiate(self.u, rest, 0)
        else:
            ker_t = 0
            usym = differentiate(self.u, rest, t_order)
        out = MollifiedField(usym, self.eps, self.dim, self.include_time,
                             self.order, self.nodes, ker_alpha, ker_t)
        return out

    def __call__(self, x, t=None):
        return self.evaluate(x, t)


def mollify(u: Expression, eps: float, dim: int = 2,
            include_time: bool = False, order: int = 3,
            nodes: int = 12) -> MollifiedField:
    """Average u over tangential (and optionally time) shifts of size eps."""
    return MollifiedField(u, eps, dim, include_time, order, nodes)


# --------------------------------------------------------------------------
# the boundary gauge
# --------------------------------------------------------------------------

@dataclass
class GaugeResult:
    a: float
    b: float
    q_tilde: Expression
    trail: list
    method: str


@dataclass
class FullGauge:
    q: Expression
    q_tilde: Expression
    a: float
    a_t: float
    coeffs: dict
    method: str


def gauge_constant(params: SpaceParams) -> float:
    """The b with x_N^n D_{x_N}^m (b * profile) = 1.

    profile = x_N^{m-n} off the integers, the iterated log otherwise."""
    m, n = params.m, params.n
    if params.integer_n and n >= 1:
        ni = int(round(n))
        return (-1.0) ** (ni - 1) / math.factorial(ni - 1)
    prod = 1.0
    for k in range(m):
        prod *= m - n - k
    return 1.0 / prod


def _gauge_profile(params: SpaceParams) -> Expression:
    if params.integer_n and params.n >= 1:
        return IterLog(int(round(params.m - params.n)))
    return BoundaryPower(params.m - params.n)


def _aitken_limit(seq: np.ndarray):
    """Accelerated limit of a sequence with a single geometric error mode."""
    s = np.asarray(seq, dtype=float)
    med = float(np.median(s))
    spread = float(np.max(np.abs(s - med))) if len(s) else 0.0
    if spread <= 1e-11 * max(1.0, abs(med)):
        return med, "constant"
    best = s[-1]
    for k in range(len(s) - 2):
        d1 = s[k + 1] - s[k]
        d2 = s[k + 2] - 2.0 * s[k + 1] + s[k]
        if abs(d2) < 1e-300:
            continue
        best = s[k] - d1 * d1 / d2
    return float(best), "aitken"


def gauge_tilde(u: Expression, params: SpaceParams, window: Window,
                geometry: DomainGeometry = HALF_SPACE) -> GaugeResult:
    """Estimate a = lim_{x_N -> 0} x_N^n D_{x_N}^m u above the window center
    and return the matching profile b * a * (power or iterated log)."""
    if geometry.kind != "half_space":
        raise ValueError("the gauge is defined in boundary coordinates")
    m, n = params.m, params.n
    dim = window.dim
    alpha = MultiIndex((0,) * (dim - 1) + (m,))
    dm = differentiate(u, alpha)
    heights = window.boundary_samples()[1:]        # ascending, no zero
    pts = np.zeros((len(heights), dim))
    pts[:, -1] = heights
    g = heights ** n * dm.evaluate(pts, 0.0)
    seq = g[::-1]                                   # toward the boundary
    a, method = _aitken_limit(seq)
    b = gauge_constant(params)
    q_tilde = mk_scale(b * a, _gauge_profile(params))
    return GaugeResult(a=a, b=b, q_tilde=q_tilde, trail=list(seq),
                       method=method)


def _shifted_mono(axis: int, k: int, shift: float) -> Expression:
    """(x_axis - shift)^k expanded into monomials."""
    if shift == 0.0:
        return Mono(axis, k)
    terms = [mk_scale(math.comb(k, l) * (-shift) ** (k - l), Mono(axis, l))
             for l in range(k + 1)]
    return mk_sum(terms)


def gauge_full(u: Expression, params: SpaceParams, window: Window,
               geometry: DomainGeometry = HALF_SPACE,
               anchor_height: float = 1.0) -> FullGauge:
    """Q = Q~ + Taylor polynomial of u - Q~ at the interior anchor point
    (0, ..., 0, anchor_height) up to degree m-1, plus the linear time term.

    Subtracting Q kills both the boundary limit x_N^n D_{x_N}^m and the
    anchor jet, which is what the normalization arguments need."""
    base = gauge_tilde(u, params, window, geometry)
    dim = window.dim
    anchor = np.zeros(dim)
    anchor[-1] = anchor_height
    diff = u - base.q_tilde
    coeffs = {}
    parts = []
    for total in range(params.m):
        for alpha in multiindices(total, dim):
            d = differentiate(diff, alpha)
            c = float(d.evaluate(anchor[None, :], 0.0)[0])
            c /= np.prod([math.factorial(a) for a in alpha.entries])
            if c == 0.0:
                continue
            coeffs[alpha.entries] = c
            factors = [Mono(i, a) for i, a in
                       enumerate(alpha.entries[:-1]) if a > 0]
            if alpha.last > 0:
                factors.append(_shifted_mono(dim - 1, alpha.last,
                                             anchor_height))
            parts.append(mk_scale(c, mk_product(factors) if factors
                                  else Const(1.0)))
    dt = differentiate(u, MultiIndex((0,) * dim), 1)
    a_t = float(dt.evaluate(anchor[None, :], 0.0)[0])
    if a_t != 0.0:
        parts.append(mk_scale(a_t, TimeMono(1)))
    q = mk_sum([base.q_tilde] + parts)
    return FullGauge(q=q, q_tilde=base.q_tilde, a=base.a, a_t=a_t,
                     coeffs=coeffs, method=base.method)


# --------------------------------------------------------------------------
# derivative growth envelopes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Envelope:
    """Admissible growth of |D^alpha u|, |alpha| = order, as x_N -> 0."""

    kind: str            # "constant" | "log" | "power"
    exponent: float

    def __call__(self, xn) -> np.ndarray:
        xn = np.asarray(xn, dtype=float)
        if self.kind == "constant":
            return np.ones_like(xn)
        with np.errstate(divide="ignore"):
            if self.kind == "log":
                return 1.0 + np.abs(np.log(xn))
            return xn ** self.exponent


def derivative_envelope(params: SpaceParams, order: int) -> Envelope:
    s = params.m - params.n - order
    if s > 0:
        return Envelope("constant", 0.0)
    if s == 0:
        return Envelope("log", 0.0)
    return Envelope("power", s)


def envelope_ratio(f, params: SpaceParams, window: Window, alpha,
                   geometry: DomainGeometry = HALF_SPACE) -> dict:
    """sup of |D^alpha f| / envelope over the window, level by level."""
    if isinstance(alpha, MultiIndex):
        alpha = alpha.entries
    order = int(sum(alpha))
    env = derivative_envelope(params, order)
    d = differentiate(f, MultiIndex(tuple(alpha))) if isinstance(f, Expression) \
        else f.derivative(tuple(alpha))
    cloud = geometry.cloud(window)
    interior = cloud.level_idx > 0
    coords = cloud.coords[interior]
    vals = np.abs(np.asarray(d.evaluate(coords, 0.0), dtype=float))
    ratios = vals / env(cloud.weight_base[interior])
    levels = cloud.level_idx[interior]
    per_level = np.zeros(int(levels.max()) + 1)
    np.maximum.at(per_level, levels, np.where(np.isfinite(ratios), ratios, 0.0))
    return {"max": float(np.max(per_level[1:])) if len(per_level) > 1 else 0.0,
            "per_level": per_level[1:].tolist(),
            "envelope": env,
            "nonfinite": int(np.count_nonzero(~np.isfinite(ratios)))}


# --------------------------------------------------------------------------
# harmonic extension of boundary data
# --------------------------------------------------------------------------

class _ZeroField:
    def evaluate(self, x, t=None):
        x = np.asarray(x, dtype=float)
        return 0.0 if x.ndim == 1 else np.zeros(len(x))

    def derivative(self, alpha, t_order=0):
        return self


class HarmonicExtension:
    """Poisson integral of one-dimensional boundary data on the upper half
    plane, u(y, 0) = v(y) exactly.

    The integral is split at |y - x'| = split * x_N: inside, the arctan
    substitution turns the kernel into a constant; outside, panels graded
    away from x' resolve the algebraic kernel decay, with extra panel edges
    at the kinks of v.  Derivatives come from difference stencils whose
    step scales with the height, so they stay inside the half plane.
    """

    def __init__(self, boundary: BoundaryFunction, split: float = 5.0,
                 inner_nodes: int = 48, panel_nodes: int = 16,
                 growth: float = 0.6, step_fraction: float = 0.1):
        if boundary.support_radius() is None:
            raise ValueError("boundary data must be compactly supported; "
                             "set a window (plateau, taper)")
        self.v = boundary
        self.split = float(split)
        self.inner_nodes = inner_nodes
        self.panel_nodes = panel_nodes
        self.growth = float(growth)
        self.step_fraction = float(step_fraction)
        self._support = boundary.support_radius()
        self._breaks = np.asarray(boundary.breakpoints(), dtype=float)
        self._cap = boundary.resolution_scale()

    # one point at positive height
    def _value(self, xp: float, xn: float) -> float:
        theta_star = math.atan(self.split)
        cuts = [-theta_star, theta_star]
        for b in self._breaks:
            rel = (b - xp) / xn
            if abs(rel) < self.split:
                cuts.append(math.atan(rel))
        edges = np.unique(np.array(sorted(cuts)))
        th, tw = _panel_nodes(edges, self.inner_nodes)
        inner = float(np.sum(tw * self.v.value(xp + xn * np.tan(th)))) / math.pi

        outer = 0.0
        lo = self.split * xn
        for sign in (1.0, -1.0):
            hi = self._support - sign * xp
            if hi <= lo:
                continue
            edges = [lo]
            pos = lo
            while pos < hi:
                pos = min(pos + min(self.growth * pos, self._cap), hi)
                edges.append(pos)
            edges = np.array(edges)
            rel_breaks = sign * (self._breaks - xp)
            inside = rel_breaks[(rel_breaks > lo) & (rel_breaks < hi)]
            if len(inside):
                edges = np.unique(np.concatenate([edges, inside]))
            r, rw = _panel_nodes(edges, self.panel_nodes)
            y = xp + sign * r
            ker = xn / (r * r + xn * xn) / math.pi
            outer += float(np.sum(rw * ker * self.v.value(y)))
        return inner + outer

    def evaluate(self, x, t=None) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        squeeze = x.ndim == 1
        if squeeze:
            x = x[None, :]
        if x.shape[1] != 2:
            raise ValueError("the extension lives on the half plane (dim 2)")
        out = np.empty(len(x))
        for i, (xp, xn) in enumerate(x):
            if xn < 0:
                out[i] = np.nan
            elif xn == 0.0:
                out[i] = float(self.v.value(xp))
            else:
                out[i] = self._value(float(xp), float(xn))
        return out[0] if squeeze else out

    def derivative(self, alpha, t_order: int = 0):
        if isinstance(alpha, MultiIndex):
            alpha = alpha.entries
        alpha = tuple(int(a) for a in alpha)
        if t_order > 0:
            return _ZeroField()
        if sum(alpha) == 0:
            return self
        return _StencilDerivative(self, alpha)


class _StencilDerivative:
    """Mixed derivative of a numeric field by nested difference stencils.

    Step size is a fixed fraction of the height x_N, so stencils never
    leave the domain; at x_N = 0 the derivative is reported as nan and the
    seminorm layer's skip accounting takes over.
    """

    def __init__(self, base, alpha):
        self.base = base
        self.alpha = tuple(alpha)

    def evaluate(self, x, t=None) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        squeeze = x.ndim == 1
        if squeeze:
            x = x[None, :]
        frac = self.base.step_fraction
        offsets = [None] * len(self.alpha)
        weights = [None] * len(self.alpha)
        for ax, k in enumerate(self.alpha):
            if k == 0:
                continue
            nn = k + 3 if (k + 3) % 2 == 1 else k + 4
            half = nn // 2
            rel = np.arange(-half, half + 1, dtype=float)
            offsets[ax] = rel
            weights[ax] = fd_weights(0.0, rel, k)[k]
        out = np.empty(len(x))
        for i, pt in enumerate(x):
            xn = pt[-1]
            if xn <= 0.0:
                out[i] = np.nan if self.alpha != (0,) * len(self.alpha) else \
                    float(self.base.evaluate(pt[None, :])[0])
                continue
            pts = pt[None, :]
            wts = np.ones(1)
            scale = 1.0
            for ax, k in enumerate(self.alpha):
                if k == 0:
                    continue
                h = frac * xn / (len(offsets[ax]) // 2)
                shifted = np.repeat(pts, len(offsets[ax]), axis=0)
                shifted[:, ax] += np.tile(offsets[ax] * h, len(pts))
                pts = shifted
                wts = (wts[:, None] * weights[ax][None, :]).ravel()
                scale /= h ** k
            vals = self.base.evaluate(pts)
            out[i] = float(np.dot(wts, vals)) * scale
        return out[0] if squeeze else out

    def derivative(self, alpha, t_order: int = 0):
        if t_order > 0:
            return _ZeroField()
        merged = tuple(a + b for a, b in zip(self.alpha, alpha))
        return _StencilDerivative(self.base, merged)


def poisson_extend(boundary: BoundaryFunction, **kwargs) -> HarmonicExtension:
    """Harmonic extension of compactly supported boundary data."""
    return HarmonicExtension(boundary, **kwargs)


def trace(f, y, t: float = 0.0) -> np.ndarray:
    """Boundary values f(y, 0, t) for tangential positions y."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if y.ndim == 1:
        coords = np.stack([y, np.zeros_like(y)], axis=-1)
    else:
        coords = np.concatenate([y, np.zeros((len(y), 1))], axis=-1)
    return np.asarray(f.evaluate(coords, t), dtype=float)


def domain_distance(geometry: DomainGeometry) -> Expression:
    """The boundary distance as an expression (exact for disks)."""
    if geometry.kind == "half_space":
        return BoundaryPower(1.0)
    return geometry.distance_expression()
