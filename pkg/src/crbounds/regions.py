"""Rate-region geometry on a sampled upper boundary.

A 2-D rate region is stored as a uniform R1 grid together with the boundary
value f(R1) = max achievable R2 (with an -inf sentinel past the region's R1
extent).  This representation makes unions over dense parameter sweeps a
pointwise maximum, which is robust and trivially parallel, at the price of
grid-resolution error absorbed by the stated tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (EmptyRegionError, GridMismatchError,
                     InvalidParameterError, UnboundedRegionError)

DEFAULT_GRID = 512


@dataclass(frozen=True)
class RatePair:
    R1: float
    R2: float

    def __post_init__(self):
        if not (math.isfinite(self.R1) and math.isfinite(self.R2)):
            raise InvalidParameterError("rates must be finite")
        if self.R1 < 0 or self.R2 < 0:
            raise InvalidParameterError("rates must be nonnegative")


class RateConstraintSet:
    """A list of linear constraints a1*R1 + a2*R2 <= b (plus R1, R2 >= 0)."""

    def __init__(self, constraints):
        cs = []
        for a1, a2, b in constraints:
            if a1 not in (0, 1, 2) or a2 not in (0, 1, 2):
                raise InvalidParameterError(f"coefficients ({a1},{a2}) must be in {{0,1,2}}")
            if a1 == 0 and a2 == 0:
                raise InvalidParameterError("constraint must involve at least one rate")
            b = float(b)
            if math.isnan(b):
                raise InvalidParameterError("constraint bound is NaN")
            cs.append((a1, a2, b))
        self.constraints = tuple(cs)

    def __iter__(self):
        return iter(self.constraints)

    def __repr__(self):
        return f"RateConstraintSet({list(self.constraints)!r})"

    def r1_extent(self) -> float:
        """Largest R1 with any R2 >= 0 still feasible (may be inf)."""
        vals = [b / a1 for a1, a2, b in self.constraints if a1 > 0]
        if not vals:
            return math.inf
        return max(0.0, min(vals))

    def bounded(self) -> bool:
        return (math.isfinite(self.r1_extent())
                and any(a2 > 0 and math.isfinite(b) for _, a2, b in self.constraints))

    def boundary(self, r1: np.ndarray) -> np.ndarray:
        """f(R1) on the given R1 samples: min over a2>0 constraints of
        (b - a1*R1)/a2 clamped at 0; -inf past the pure-R1 extent."""
        r1 = np.asarray(r1, dtype=float)
        f = np.full(r1.shape, np.inf)
        for a1, a2, b in self.constraints:
            if a2 > 0:
                f = np.minimum(f, (b - a1 * r1) / a2)
        f = np.maximum(f, 0.0)
        r1_only = [b / a1 for a1, a2, b in self.constraints if a2 == 0 and a1 > 0]
        if r1_only:
            f = np.where(r1 > min(r1_only) + 1e-12, -np.inf, f)
        return f


@dataclass(frozen=True)
class Region:
    """Sampled upper boundary R2 = f(R1) with provenance of its generators."""

    grid: np.ndarray = field(repr=False)
    f: np.ndarray = field(repr=False)
    provenance: str = ""

    def __post_init__(self):
        if self.grid.shape != self.f.shape or self.grid.ndim != 1:
            raise InvalidParameterError("grid and boundary must be 1-D and congruent")

    def is_empty(self) -> bool:
        return not np.any(np.isfinite(self.f))

    def r1_max(self) -> float:
        """Largest grid point still inside the region."""
        idx = np.flatnonzero(np.isfinite(self.f))
        if idx.size == 0:
            raise EmptyRegionError("region has no feasible boundary samples")
        return float(self.grid[idx[-1]])

    def boundary_at(self, r1) -> np.ndarray:
        """Linear interpolation of f; -inf past the extent."""
        idx = np.flatnonzero(np.isfinite(self.f))
        if idx.size == 0:
            raise EmptyRegionError("region has no feasible boundary samples")
        g, f = self.grid[: idx[-1] + 1], self.f[: idx[-1] + 1]
        r1 = np.asarray(r1, dtype=float)
        if g[-1] <= g[0]:  # degenerate single-point region
            out = np.where(np.abs(r1 - g[0]) <= 1e-15, f[-1], -np.inf)
        else:
            out = np.interp(r1, g, f)
            out = np.where(r1 > g[-1], -np.inf, out)
        return out

    def to_csv(self, fh) -> None:
        """Write boundary samples as `R1,R2` rows with 9 significant digits."""
        fh.write("R1,R2\n")
        for r1, r2 in zip(self.grid, self.f):
            if np.isfinite(r2):
                fh.write(f"{r1:.9g},{r2:.9g}\n")


def make_grid(extent: float, resolution: int = DEFAULT_GRID) -> np.ndarray:
    if resolution < 2:
        raise InvalidParameterError("grid resolution must be >= 2")
    return np.linspace(0.0, max(float(extent), 0.0), resolution)


def from_constraints(cs: RateConstraintSet, grid=DEFAULT_GRID) -> Region:
    """Region of a single constraint set.

    `grid` is either a resolution (the grid then spans [0, R1 extent]) or an
    explicit R1 sample array shared with other regions for later unions.
    """
    if isinstance(grid, (int, np.integer)):
        if not cs.bounded():
            raise UnboundedRegionError(f"constraint set does not bound the region: {cs}")
        grid = make_grid(cs.r1_extent(), grid)
    else:
        grid = np.asarray(grid, dtype=float)
    return Region(grid=grid, f=cs.boundary(grid), provenance=repr(cs))


def _check_common_grid(rs):
    rs = list(rs)
    if not rs:
        raise InvalidParameterError("need at least one region")
    for r in rs[1:]:
        if r.grid.shape != rs[0].grid.shape or not np.array_equal(r.grid, rs[0].grid):
            raise GridMismatchError("regions are sampled on different grids")
    return rs


def union_regions(rs) -> Region:
    """Pointwise maximum of boundaries over a common grid."""
    rs = _check_common_grid(rs)
    f = np.max(np.stack([r.f for r in rs]), axis=0)
    return Region(grid=rs[0].grid, f=f, provenance=f"union of {len(rs)} regions")


def intersect_regions(rs) -> Region:
    """Pointwise minimum of boundaries over a common grid."""
    rs = _check_common_grid(rs)
    f = np.min(np.stack([r.f for r in rs]), axis=0)
    return Region(grid=rs[0].grid, f=f, provenance=f"intersection of {len(rs)} regions")


def convexify(r: Region) -> Region:
    """Upper concave envelope of the boundary (time sharing as convex hull)."""
    mask = np.isfinite(r.f)
    if not np.any(mask):
        return r
    xs, ys = r.grid[mask], r.f[mask]
    hull = []  # monotone-chain upper hull; slopes nonincreasing left to right
    for x, y in zip(xs, ys):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (y - y2) - (y2 - y1) * (x - x2) >= 0:
                hull.pop()
            else:
                break
        hull.append((x, y))
    hx = np.array([p[0] for p in hull])
    hy = np.array([p[1] for p in hull])
    if hx[-1] > hx[0]:
        f = np.interp(r.grid, hx, hy)
    else:
        f = np.full_like(r.f, hy[-1])
    f = np.where(r.grid > xs[-1] + 1e-15, -np.inf, f)
    return Region(grid=r.grid, f=f, provenance=f"hull of ({r.provenance})")


def contains(r: Region, p: RatePair, tol: float = 0.0) -> bool:
    """Whether the rate pair lies in the region, up to an additive tolerance."""
    if r.is_empty():
        return False
    ext = r.r1_max()
    if p.R1 <= ext:
        return p.R2 <= float(r.boundary_at(p.R1)) + tol
    if p.R1 <= ext + tol:
        return p.R2 <= float(r.boundary_at(ext)) + tol
    return False


def _shifted_points_inside(inner: Region, r1s, r2s, g, tol=1e-9) -> bool:
    """All of (r1-g, r2-g)^+ inside `inner` (vectorized contains)."""
    q1 = np.maximum(r1s - g, 0.0)
    q2 = np.maximum(r2s - g, 0.0)
    fin = inner.boundary_at(q1)
    ok = q2 <= fin + tol
    # points past the inner extent only pass if they collapse onto the axis
    ext = inner.r1_max()
    past = q1 > ext + tol
    return bool(np.all(np.where(past, False, ok)))


def point_gap(outer_point: RatePair, inner: Region, resolution: float = 1e-6) -> float:
    """Smallest g >= 0 shifting the point into the region (bisection)."""
    if inner.is_empty():
        raise EmptyRegionError("inner region is empty")
    p1 = np.array([outer_point.R1])
    p2 = np.array([outer_point.R2])
    if _shifted_points_inside(inner, p1, p2, 0.0):
        return 0.0
    lo, hi = 0.0, max(outer_point.R1, outer_point.R2)
    if not _shifted_points_inside(inner, p1, p2, hi):
        raise EmptyRegionError("inner region does not contain the origin")
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if _shifted_points_inside(inner, p1, p2, mid):
            hi = mid
        else:
            lo = mid
    return hi


def additive_gap(outer: Region, inner: Region, resolution: float = 1e-4) -> float:
    """Smallest g such that shifting every outer boundary point by g in both
    components (clamped at 0) lands inside the inner region."""
    if inner.is_empty():
        raise EmptyRegionError("inner region is empty")
    mask = np.isfinite(outer.f)
    if not np.any(mask):
        raise EmptyRegionError("outer region is empty")
    r1s = outer.grid[mask]
    r2s = np.maximum(outer.f[mask], 0.0)
    if _shifted_points_inside(inner, r1s, r2s, 0.0):
        return 0.0
    lo = 0.0
    hi = max(float(np.max(r1s)), float(np.max(r2s)))
    if not _shifted_points_inside(inner, r1s, r2s, hi):
        raise EmptyRegionError("inner region does not contain the origin")
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if _shifted_points_inside(inner, r1s, r2s, mid):
            hi = mid
        else:
            lo = mid
    return hi
