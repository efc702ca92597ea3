"""Truncation windows, graded point clouds and pair enumeration.

Suprema over the unbounded half-space are estimated on finite windows:
tangential coordinates sampled uniformly on [-R', R'], the boundary
coordinate on a geometrically graded ladder {0} U {R_N * rho^j, 0 <= j <= L}
that piles points up against the degeneracy, and time on a uniform grid.
Growth or refinement ladders over such windows are what the classifier sees.

Curved domains are handled by the same machinery: a disk cloud grades the
distance-to-boundary variable geometrically along each ray and the weight
becomes the exact boundary-distance function of the disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .fields import Const, Expression, Mono, PowerOf, Sum, mk_scale, mk_sum

__all__ = [
    "Window",
    "DomainGeometry",
    "SpatialCloud",
    "PairSet",
    "HALF_SPACE",
    "spatial_pairs",
    "time_pairs",
]

# boundary-adjacent levels (counted from the boundary row upward) that are
# exempt from pair subsampling
_PROTECTED_LEVELS = 7


@dataclass(frozen=True)
class Window:
    """Sampling window on the half-space (or a disk when paired with one).

    ``dim`` is the spatial dimension N; the last coordinate is the boundary
    one.  ``levels`` counts the geometric rungs below ``boundary_extent``,
    giving levels+2 boundary samples including 0 and the extent itself.
    """

    dim: int = 2
    tangent_extent: float = 1.5
    boundary_extent: float = 1.5
    time_extent: float = 1.5
    tangent_points: int = 9
    time_points: int = 5
    grading_ratio: float = 0.7
    levels: int = 24
    time_from_zero: bool = False
    pair_cap: int = 2**24

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not (0.0 < self.grading_ratio < 1.0):
            raise ValueError("grading_ratio must lie in (0, 1)")
        if self.levels < 1 or self.tangent_points < 2 and self.dim > 1:
            raise ValueError("degenerate window grid")
        if self.time_points < 1:
            raise ValueError("time_points must be >= 1")
        n_space = self.tangent_points ** (self.dim - 1) * (self.levels + 2)
        if n_space * self.time_points > 2**22:
            raise ValueError("window grid exceeds the point budget")
        protected = min(_PROTECTED_LEVELS, self.levels + 2)
        prot_pts = self.tangent_points ** (self.dim - 1) * protected
        prot_pairs = prot_pts * (n_space - prot_pts) + prot_pts * (prot_pts - 1) // 2
        if prot_pairs * self.time_points > self.pair_cap:
            raise ValueError(
                "boundary-adjacent pairs alone exceed the pair cap; "
                "shrink the grid instead of relying on subsampling"
            )

    # -- sample sets -------------------------------------------------------
    def boundary_samples(self) -> np.ndarray:
        j = np.arange(self.levels + 1)
        lev = self.boundary_extent * self.grading_ratio**j
        return np.concatenate([[0.0], lev[::-1]])

    def tangent_samples(self) -> np.ndarray:
        return np.linspace(-self.tangent_extent, self.tangent_extent,
                           self.tangent_points)

    def times(self) -> np.ndarray:
        if self.time_points == 1:
            return np.array([0.0])
        if self.time_from_zero:
            return np.linspace(0.0, self.time_extent, self.time_points)
        return np.linspace(-self.time_extent, self.time_extent, self.time_points)

    # -- ladder constructors -------------------------------------------------
    def scaled(self, s: float) -> "Window":
        return replace(self, tangent_extent=self.tangent_extent * s,
                       boundary_extent=self.boundary_extent * s,
                       time_extent=self.time_extent * s)

    def refined(self, extra_levels: int) -> "Window":
        return replace(self, levels=self.levels + extra_levels)


@dataclass(frozen=True)
class SpatialCloud:
    """Flattened spatial sample set of a window over some geometry."""

    coords: np.ndarray       # (S, N)
    weight_base: np.ndarray  # (S,) boundary distance at each point
    level_idx: np.ndarray    # (S,) 0 = boundary row, increasing inward
    grid_shape: tuple[int, ...]  # tangential axes first, distance axis last

    @property
    def size(self) -> int:
        return self.coords.shape[0]


@dataclass(frozen=True)
class DomainGeometry:
    """Half-space or disk domain; supplies clouds and the distance weight."""

    kind: str = "half_space"
    center: tuple[float, ...] = (0.0, 0.0)
    radius: float = 1.0

    def __post_init__(self):
        if self.kind not in ("half_space", "disk"):
            raise ValueError(f"unknown geometry kind {self.kind!r}")
        if self.kind == "disk" and self.radius <= 0:
            raise ValueError("disk radius must be positive")

    # -- boundary distance ----------------------------------------------------
    def distance(self, x) -> np.ndarray:
        """d(x): exact boundary distance surrogate used as the weight."""
        xa = np.asarray(x, dtype=float)
        if self.kind == "half_space":
            return xa[..., -1]
        c = np.asarray(self.center)
        r2 = np.sum((xa - c) ** 2, axis=-1)
        return (self.radius**2 - r2) / (2.0 * self.radius)

    def distance_expression(self) -> Expression:
        """d(x) as an algebra element (disk only; polynomial in x)."""
        if self.kind != "disk":
            raise ValueError("the half-space weight is the plain coordinate x_N")
        terms: list[Expression] = [Const(self.radius**2)]
        for i, c in enumerate(self.center):
            terms.append(mk_scale(-1.0, Mono(i, 2)))
            if c != 0.0:
                terms.append(mk_scale(2.0 * c, Mono(i, 1)))
                terms.append(Const(-c * c))
        return mk_scale(1.0 / (2.0 * self.radius), mk_sum(terms))

    # -- clouds ---------------------------------------------------------------
    def cloud(self, window: Window) -> SpatialCloud:
        if self.kind == "half_space":
            return _half_space_cloud(window)
        return _disk_cloud(window, self)


HALF_SPACE = DomainGeometry()


def _half_space_cloud(window: Window) -> SpatialCloud:
    axes = [window.tangent_samples() for _ in range(window.dim - 1)]
    axes.append(window.boundary_samples())
    mesh = np.meshgrid(*axes, indexing="ij")
    coords = np.stack([m.ravel() for m in mesh], axis=-1)
    shape = tuple(len(a) for a in axes)
    lev = np.broadcast_to(np.arange(shape[-1]), shape).ravel()
    return SpatialCloud(coords=coords, weight_base=coords[:, -1].copy(),
                        level_idx=lev.astype(np.int64), grid_shape=shape)


def _disk_cloud(window: Window, geo: DomainGeometry) -> SpatialCloud:
    if window.dim != 2:
        raise ValueError("disk clouds are implemented for dim == 2")
    depth = min(window.boundary_extent, 0.8 * geo.radius)
    j = np.arange(window.levels + 1)
    dist = np.concatenate([[0.0], (depth * window.grading_ratio**j)[::-1]])
    phi = np.linspace(0.0, 2.0 * math.pi, window.tangent_points, endpoint=False)
    pp, dd = np.meshgrid(phi, dist, indexing="ij")
    rr = geo.radius - dd
    cx, cy = geo.center
    coords = np.stack([cx + rr.ravel() * np.cos(pp.ravel()),
                       cy + rr.ravel() * np.sin(pp.ravel())], axis=-1)
    # rounding can push a boundary-ring point a few ulp outside the circle,
    # which would flip the sign of the polynomial distance; pull those back
    center = np.asarray(geo.center, dtype=np.float64)
    for _ in range(4):
        d = geo.distance(coords)
        bad = d < 0.0
        if not bad.any():
            break
        coords[bad] = center + (coords[bad] - center) * (1.0 - 4.0e-16)
    shape = (len(phi), len(dist))
    lev = np.broadcast_to(np.arange(shape[-1]), shape).ravel()
    return SpatialCloud(coords=coords, weight_base=geo.distance(coords),
                        level_idx=lev.astype(np.int64), grid_shape=shape)


# --------------------------------------------------------------------------
# pair enumeration
# --------------------------------------------------------------------------

@dataclass
class PairSet:
    """Index pairs into a flat (spatial x time) point list."""

    i: np.ndarray            # (P,) int
    j: np.ndarray            # (P,) int
    dist: np.ndarray         # (P,) step length in the pairing variable
    subsampled: bool = False


def _line_pairs(grid_shape, axis):
    """Index pairs along one grid axis, all other coordinates shared."""
    n = grid_shape[axis]
    idx = np.arange(int(np.prod(grid_shape))).reshape(grid_shape)
    moved = np.moveaxis(idx, axis, -1).reshape(-1, n)
    a, b = np.triu_indices(n, k=1)
    return moved[:, a].ravel(), moved[:, b].ravel()


def _block_pairs(grid_shape):
    """Pairs differing in the tangential block, distance level shared."""
    tang = int(np.prod(grid_shape[:-1]))
    n_lev = grid_shape[-1]
    idx = np.arange(tang * n_lev).reshape(tang, n_lev)
    a, b = np.triu_indices(tang, k=1)
    return idx[a, :].ravel(), idx[b, :].ravel()


def _iso_pairs(size):
    a, b = np.triu_indices(size, k=1)
    return a, b


def spatial_pairs(cloud: SpatialCloud, mode: str, axis=None,
                  n_times: int = 1, cap: int = 2**24,
                  eps_restrict: float | None = None) -> PairSet:
    """Same-time pairs of cloud points, tiled over the time grid.

    mode: "axis" (share all coordinates but one), "xprime" (share the
    distance level, differ tangentially), or "isotropic" (any two points).
    Pairs beyond the cap are thinned by a deterministic stride, except pairs
    touching the boundary-adjacent levels, which are always kept.
    """
    shape = cloud.grid_shape
    if mode == "axis":
        if axis == "xn" or axis == len(shape) - 1:
            ax = len(shape) - 1
        else:
            ax = int(axis)
        ii, jj = _line_pairs(shape, ax)
        dist = np.abs(cloud.coords[ii, ax] - cloud.coords[jj, ax])
    elif mode == "xprime":
        ii, jj = _block_pairs(shape)
        dist = np.linalg.norm(cloud.coords[ii] - cloud.coords[jj], axis=-1)
    elif mode == "isotropic":
        ii, jj = _iso_pairs(cloud.size)
        dist = np.linalg.norm(cloud.coords[ii] - cloud.coords[jj], axis=-1)
    else:
        raise ValueError(f"unknown pair mode {mode!r}")

    keep = dist > 0
    ii, jj, dist = ii[keep], jj[keep], dist[keep]

    if eps_restrict is not None:
        wb = cloud.weight_base
        keep = dist <= eps_restrict * np.maximum(wb[ii], wb[jj])
        ii, jj, dist = ii[keep], jj[keep], dist[keep]

    subsampled = False
    if ii.size * n_times > cap:
        lev = cloud.level_idx
        protected = (lev[ii] < _PROTECTED_LEVELS) | (lev[jj] < _PROTECTED_LEVELS)
        n_prot = int(protected.sum())
        budget = cap // n_times - n_prot
        if budget <= 0:
            raise ValueError("pair cap too small for the protected strata")
        rest = np.flatnonzero(~protected)
        stride = int(math.ceil(rest.size / budget))
        chosen = np.concatenate([np.flatnonzero(protected), rest[::stride]])
        chosen.sort()
        ii, jj, dist = ii[chosen], jj[chosen], dist[chosen]
        subsampled = True

    if n_times == 1:
        return PairSet(ii.astype(np.int64), jj.astype(np.int64), dist, subsampled)
    k = np.arange(n_times)
    fi = (ii[:, None] * n_times + k[None, :]).ravel()
    fj = (jj[:, None] * n_times + k[None, :]).ravel()
    fd = np.repeat(dist, n_times)
    return PairSet(fi.astype(np.int64), fj.astype(np.int64), fd, subsampled)


def time_pairs(n_space: int, times: np.ndarray, cap: int = 2**24) -> PairSet:
    """Same-point pairs across the time grid."""
    a, b = np.triu_indices(len(times), k=1)
    dt = np.abs(times[a] - times[b])
    keep = dt > 0
    a, b, dt = a[keep], b[keep], dt[keep]
    s = np.arange(n_space)
    fi = (s[:, None] * len(times) + a[None, :]).ravel()
    fj = (s[:, None] * len(times) + b[None, :]).ravel()
    fd = np.tile(dt, n_space)
    if fi.size > cap:
        raise ValueError("time pair budget exceeds the cap")
    return PairSet(fi.astype(np.int64), fj.astype(np.int64), fd, False)
