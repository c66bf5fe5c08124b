"""The four outer bounds on the capacity region.

* `outer_I_*`  — tightest known bound: a union over a correlation disk of
  constraint sets, each with an inner 1-D minimization over the receiver
  noise correlation.
* `outer_piecewise` — closed-form piecewise-linear relaxation of the above
  (the +2 / +3 bit constants carry the constant-gap argument).
* `outer_cifc_p2p` and `outer_p2p_bc` — bounds obtained by splitting the
  receiver noise and transforming the network into channels with known
  capacity expressions; parameterized by noise-split variances sigma^2 and
  swept over a power-allocation parameter alpha.

The alpha sweeps use interval coverings: each alpha sub-interval is replaced
by a constraint set provably containing every set in that sub-interval, so
the sampled union is a superset of the continuous union and remains a valid
outer bound at any finite resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, cap
from .errors import InfeasibleTransformError, InvalidParameterError
from .regions import (DEFAULT_GRID, RateConstraintSet, Region,
                      from_constraints, make_grid, union_regions)

DEFAULT_SIGMA_SQ = 0.5
DEFAULT_SIGMA_SWEEP = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


@dataclass(frozen=True)
class CorrelationPoint:
    """Real nonnegative input correlations of sources with the relay.

    Nonnegative reals suffice: with nonnegative gains the correlation terms
    enter the bounds through their real parts, which are maximized by real
    positive values, so complex phases cannot enlarge the union.
    """

    rho1c: float
    rho2c: float

    def __post_init__(self):
        if not (0 <= self.rho1c <= 1 and 0 <= self.rho2c <= 1):
            raise InvalidParameterError("correlations must lie in [0, 1]")
        if self.rho1c**2 + self.rho2c**2 > 1 + 1e-12:
            raise InvalidParameterError("correlation point outside the unit disk")


@dataclass(frozen=True)
class TransformParams:
    """Noise-split variances (and optional fixed alpha) of the transformed
    channels used by the CIFC+P2P and P2P+BC bounds."""

    sigma11sq: float = DEFAULT_SIGMA_SQ
    sigma22sq: float = DEFAULT_SIGMA_SQ
    alpha: float | None = None

    def __post_init__(self):
        for name in ("sigma11sq", "sigma22sq"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise InvalidParameterError(f"{name}={v!r} must lie in (0, 1]")
        if self.alpha is not None and not 0 <= self.alpha <= 1:
            raise InvalidParameterError("alpha must lie in [0, 1]")


def _ratio(num: float, den: float) -> float:
    """num/den with the 0/0 -> 0 and x/0 -> inf conventions of the bounds."""
    if num == 0:
        return 0.0
    if den == 0:
        return math.inf
    return num / den


def _cap_or_inf(x: float) -> float:
    return math.inf if math.isinf(x) else cap(x)


def _golden_min(fn, a: float, b: float, tol: float = 1e-6) -> float:
    """Golden-section minimum of fn over [a, b] to x-tolerance tol."""
    gr = (math.sqrt(5) - 1) / 2
    c = b - gr * (b - a)
    d = a + gr * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = fn(d)
    return min(fc, fd)


def _min_over_rhoz(fn, rz_steps: int) -> float:
    """min over rho_z in (-1, 1) of fn, coarse grid then golden refinement.

    fn must return +inf where its cap argument would leave the domain; such
    points are simply excluded from the search.
    """
    eps = 1e-9
    grid = np.linspace(-1 + eps, 1 - eps, rz_steps)
    vals = np.array([fn(r) for r in grid])
    i = int(np.argmin(vals))
    if not math.isfinite(vals[i]):
        return math.inf
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, rz_steps - 1)]
    return min(float(vals[i]), _golden_min(fn, lo, hi))


def outer_I_at(ch: ChannelParams, c: CorrelationPoint, rz_steps: int = 65) -> RateConstraintSet:
    """The four-constraint set of the tightest bound at one correlation point.

    Each sum-rate bound contains min over the receiver-noise correlation of a
    second cap term plus -log2(1 - rho_z^2).  When a relay gain is zero the
    corresponding sum bound degenerates (division by that gain) and is
    replaced by the sum of the two single-rate bounds, which is always valid.
    """
    if rz_steps < 3:
        raise InvalidParameterError("rz_steps must be >= 3")
    h11, h22, h1c, h2c = ch.h11, ch.h22, ch.h1c, ch.h2c
    r1, r2 = c.rho1c, c.rho2c

    b1 = cap(h11**2 + h1c**2 * (1 - r2**2) + 2 * r1 * h1c * h11)
    b2 = cap(h22**2 + h2c**2 * (1 - r1**2) + 2 * r2 * h2c * h22)

    def sum_bound(first, hd, hc, hcc, rho_own, rho_other):
        # first + min_{rho_z} [ cap(hd^2 + hc^2/hcc^2 - 2 rho_z hc/hcc
        #   - (rho_own hd hcc + rho_z - hc/hcc)^2 / (hcc^2 (1-rho_other^2) + 1))
        #   - log2(1 - rho_z^2) ]
        q = hc / hcc
        den = hcc**2 * (1 - rho_other**2) + 1

        def term(rz):
            arg = hd**2 + q**2 - 2 * rz * q - (rho_own * hd * hcc + rz - q) ** 2 / den
            if arg <= -1 + 1e-12:
                return math.inf
            return cap(arg) - math.log2(1 - rz**2)

        m = _min_over_rhoz(term, rz_steps)
        if not math.isfinite(m):
            return b1 + b2
        return max(0.0, first + m)

    if h2c > 0:
        b3 = sum_bound(cap(h22**2 + h2c**2 + 2 * r2 * h2c * h22),
                       h11, h1c, h2c, r1, r2)
    else:
        b3 = b1 + b2
    if h1c > 0:
        b4 = sum_bound(cap(h11**2 + h1c**2 + 2 * r1 * h1c * h11),
                       h22, h2c, h1c, r2, r1)
    else:
        b4 = b1 + b2

    return RateConstraintSet([(1, 0, b1), (0, 1, b2), (1, 1, b3), (1, 1, b4)])


def rho_disk_grid(n: int):
    """Sample points of the feasible quarter disk, including its arc."""
    pts = []
    for r1 in np.linspace(0, 1, n):
        for r2 in np.linspace(0, 1, n):
            if r1**2 + r2**2 <= 1 + 1e-12:
                pts.append(CorrelationPoint(float(r1), float(r2)))
    for th in np.linspace(0, math.pi / 2, n):
        pts.append(CorrelationPoint(min(1.0, math.cos(th)), min(1.0, math.sin(th))))
    return pts


def outer_I_region(ch: ChannelParams, rho_grid: int = 64,
                   grid=DEFAULT_GRID, rz_steps: int = 65) -> Region:
    """Union of `outer_I_at` over a quarter-disk correlation grid."""
    if rho_grid < 8:
        raise InvalidParameterError("rho_grid must be >= 8")
    sets = [outer_I_at(ch, c, rz_steps) for c in rho_disk_grid(rho_grid)]
    return _union_of_sets(sets, grid, provenance="tightest outer bound")


def _union_of_sets(sets, grid, provenance: str) -> Region:
    if isinstance(grid, (int, np.integer)):
        extent = max(cs.r1_extent() for cs in sets)
        if not math.isfinite(extent):
            extent = max((cs.r1_extent() for cs in sets if math.isfinite(cs.r1_extent())),
                         default=0.0)
        grid = make_grid(extent, grid)
    region = union_regions([from_constraints(cs, grid) for cs in sets])
    return Region(grid=region.grid, f=region.f, provenance=provenance)


def outer_piecewise(ch: ChannelParams) -> RateConstraintSet:
    """Closed-form piecewise-linear outer bound (+2 on single rates, +3 on sums).

    The cross-gain ratio in a sum bound degenerates when the denominator gain
    is zero: with both relay gains zero the ratio term falls back to the
    direct link, otherwise the sum bound is replaced by the sum of the two
    single-rate bounds.
    """
    h11, h22, h1c, h2c = ch.h11, ch.h22, ch.h1c, ch.h2c
    b1 = cap(max(h11**2, h1c**2)) + 2
    b2 = cap(max(h22**2, h2c**2)) + 2

    def sum_b(first_sq, hd_sq, hc, hcc):
        # cap(max direct/cross at one receiver) + cap(max{hd^2, hc^2/hcc^2}) + 3
        if hcc > 0:
            return cap(first_sq) + cap(max(hd_sq, (hc / hcc) ** 2)) + 3
        if hc == 0:
            return cap(first_sq) + cap(hd_sq) + 3
        return b1 + b2

    b3 = sum_b(max(h22**2, h2c**2), h11**2, h1c, h2c)
    b4 = sum_b(max(h11**2, h1c**2), h22**2, h2c, h1c)
    return RateConstraintSet([(1, 0, b1), (0, 1, b2), (1, 1, b3), (1, 1, b4)])


def outer_piecewise_region(ch: ChannelParams, grid=DEFAULT_GRID) -> Region:
    r = from_constraints(outer_piecewise(ch), grid)
    return Region(grid=r.grid, f=r.f, provenance="piecewise-linear outer bound")


def outer_cifc_p2p(ch: ChannelParams, sigma11sq: float = DEFAULT_SIGMA_SQ,
                   alpha_steps: int = 65, grid=DEFAULT_GRID) -> Region:
    """Outer bound via the cognitive-IFC + point-to-point transformation.

    For each alpha the transformed channel yields an R1 bound and a sum-rate
    bound; the region is the union over alpha in [0, 1].  Consecutive grid
    alphas are replaced by an interval covering (monotone pieces evaluated at
    their maximizing endpoint) so the result contains the continuous union.
    sigma11sq = 1 puts all receiver-1 noise on the direct branch, driving the
    relay term of the R1 bound to +inf (the constraint becomes vacuous).
    """
    if not 0 < sigma11sq <= 1:
        raise InvalidParameterError("sigma11sq must lie in (0, 1]")
    if alpha_steps < 3:
        raise InvalidParameterError("alpha_steps must be >= 3")
    h11, h22, h1c, h2c = ch.h11, ch.h22, ch.h1c, ch.h2c
    c_p2p = cap(h11**2 / sigma11sq)
    noise1c = 1 - sigma11sq

    def relay_term(a):
        return _cap_or_inf(_ratio(a * h1c**2, noise1c))

    alphas = np.linspace(0, 1, alpha_steps)
    sets = []
    for al, au in zip(alphas[:-1], alphas[1:]):
        b1 = relay_term(au) + c_p2p
        t_coh = cap((1 - al) * h2c**2 + h22**2 + 2 * math.sqrt(1 - al) * h2c * h22)
        t_excess = max(0.0, relay_term(au) - cap(al * h2c**2))
        b3 = t_coh + t_excess + c_p2p
        sets.append(RateConstraintSet([(1, 0, b1), (1, 1, b3)]))
    return _union_of_sets(sets, grid, provenance="CIFC+P2P outer bound")


def outer_p2p_bc(ch: ChannelParams, t: TransformParams = TransformParams(),
                 alpha_steps: int = 65, grid=DEFAULT_GRID) -> Region:
    """Outer bound via the parallel P2P + degraded-broadcast transformation.

    Requires the degradedness condition h1c/(1-sigma11^2) >= h2c/(1-sigma22^2)
    (implemented exactly as printed, with first-power gains).  The region is
    a union over alpha of rectangles, again with interval coverings.
    """
    if alpha_steps < 3:
        raise InvalidParameterError("alpha_steps must be >= 3")
    h11, h22, h1c, h2c = ch.h11, ch.h22, ch.h1c, ch.h2c
    lhs = _ratio(h1c, 1 - t.sigma11sq)
    rhs = _ratio(h2c, 1 - t.sigma22sq)
    if lhs < rhs:
        raise InfeasibleTransformError(
            f"degradedness condition fails: {lhs} < {rhs}")

    c1 = cap(h11**2 / t.sigma11sq)
    c2 = cap(h22**2 / t.sigma22sq)
    noise1c = 1 - t.sigma11sq
    noise2c = 1 - t.sigma22sq

    alphas = np.linspace(0, 1, alpha_steps)
    sets = []
    for al, au in zip(alphas[:-1], alphas[1:]):
        b1 = _cap_or_inf(_ratio((1 - al) * h1c**2, noise1c)) + c1
        b2 = _cap_or_inf(_ratio(au * h2c**2, (1 - au) * h2c**2 + noise2c)) + c2
        sets.append(RateConstraintSet([(1, 0, b1), (0, 1, b2)]))
    return _union_of_sets(sets, grid, provenance="P2P+BC outer bound")
