"""Constant-gap certification.

Compares the achievable region against the regime-appropriate outer bound:
the piecewise-linear bound alone when every squared gain is at least one
("large SNR"), otherwise its intersection with the two transformed-channel
bounds swept over their noise-split variances.  Reports per-corner and
whole-region additive gaps against the 3-bit threshold.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, cap, classify_regime, make_channel
from .errors import InfeasibleTransformError, InvalidParameterError
from .inner import inner_region
from .outer import (DEFAULT_SIGMA_SWEEP, TransformParams, outer_cifc_p2p,
                    outer_p2p_bc, outer_piecewise)
from .regions import (DEFAULT_GRID, RatePair, RateConstraintSet, Region,
                      additive_gap, from_constraints, intersect_regions,
                      point_gap)

GAP_THRESHOLD = 3.0
GAP_TOL = 1e-6


@dataclass(frozen=True)
class GapReport:
    channel: ChannelParams
    regime: str
    cornerA: RatePair
    cornerB: RatePair
    achievedA: RatePair
    achievedB: RatePair
    gapA: float
    gapB: float
    regionGap: float

    @property
    def passed(self) -> bool:
        return max(self.gapA, self.gapB, self.regionGap) <= GAP_THRESHOLD + GAP_TOL

    def to_dict(self) -> dict:
        return {
            "channel": self.channel.to_dict(),
            "regime": self.regime,
            "cornerA": [self.cornerA.R1, self.cornerA.R2],
            "cornerB": [self.cornerB.R1, self.cornerB.R2],
            "gapA": self.gapA,
            "gapB": self.gapB,
            "regionGap": self.regionGap,
            "pass": self.passed,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def corner_points(cs: RateConstraintSet) -> tuple[RatePair, RatePair]:
    """The two Pareto-optimal corners of a piecewise-linear constraint set.

    A sits at the R1 bound with R2 the tightest residual of the sum bounds
    (both sum bounds are evaluated symmetrically, so no dominance assumption
    between them is needed); B is the mirror image.  Negative coordinates
    are clamped at 0.
    """
    r1b = min((b for a1, a2, b in cs if (a1, a2) == (1, 0)), default=None)
    r2b = min((b for a1, a2, b in cs if (a1, a2) == (0, 1)), default=None)
    sums = [b for a1, a2, b in cs if (a1, a2) == (1, 1)]
    if r1b is None or r2b is None:
        raise InvalidParameterError("constraint set lacks single-rate bounds")
    a2 = min([s - r1b for s in sums] + [r2b])
    b1 = min([s - r2b for s in sums] + [r1b])
    clamp = lambda v: max(0.0, v)
    return (RatePair(clamp(r1b), clamp(a2)), RatePair(clamp(b1), clamp(r2b)))


def table1_outer_row(ch: ChannelParams) -> RateConstraintSet:
    """Regime-specific outer-bound row (+2 on single rates, +3 on the sum)."""
    regime = classify_regime(ch)
    if regime.endswith("-swapped"):
        row = table1_outer_row(ch.swapped())
        return RateConstraintSet([(a2, a1, b) for a1, a2, b in row])
    h11, h22, h1c, h2c = ch.h11, ch.h22, ch.h1c, ch.h2c
    if regime == "W":
        return RateConstraintSet([
            (1, 0, cap(h11**2) + 2),
            (0, 1, cap(h22**2) + 2),
        ])
    ratio_sq = (h1c / h2c) ** 2 if h2c > 0 else math.inf
    if regime == "S1":
        sum_b = cap(h2c**2) + cap(h11**2) + 3
        r2 = cap(h2c**2) + 2
    elif regime == "S2":
        sum_b = cap(h2c**2) + cap(ratio_sq) + 3
        r2 = cap(h2c**2) + 2
    elif regime == "M1":
        sum_b = cap(h22**2) + cap(h11**2) + 3
        r2 = cap(h22**2) + 2
    else:  # M2; the ratio may be infinite only when h2c = 0, handled below
        term = cap(ratio_sq) if math.isfinite(ratio_sq) else cap(h1c**2)
        sum_b = cap(h22**2) + term + 3
        r2 = cap(h22**2) + 2
    return RateConstraintSet([
        (1, 0, cap(h1c**2) + 2),
        (0, 1, r2),
        (1, 1, sum_b),
    ])


def is_large_snr(ch: ChannelParams) -> bool:
    return min(ch.h11, ch.h22, ch.h1c, ch.h2c) ** 2 >= 1


def certification_outer_region(ch: ChannelParams, grid=DEFAULT_GRID,
                               sigma_sweep=DEFAULT_SIGMA_SWEEP,
                               alpha_steps: int = 65) -> Region:
    """The outer region used for certification.

    Large SNR: the piecewise-linear bound.  Small SNR: its intersection with
    the transformed-channel bounds over the sigma sweep (any intersection of
    valid outer bounds is a valid outer bound).
    """
    pw = from_constraints(outer_piecewise(ch), grid)
    if is_large_snr(ch):
        return Region(grid=pw.grid, f=pw.f, provenance="piecewise outer")
    parts = [pw]
    for s in sigma_sweep:
        parts.append(outer_cifc_p2p(ch, sigma11sq=s, alpha_steps=alpha_steps,
                                    grid=pw.grid))
    for s1 in sigma_sweep:
        for s2 in sigma_sweep:
            try:
                t = TransformParams(sigma11sq=s1, sigma22sq=s2)
                parts.append(outer_p2p_bc(ch, t, alpha_steps=alpha_steps,
                                          grid=pw.grid))
            except InfeasibleTransformError:
                continue
    region = intersect_regions(parts)
    return Region(grid=region.grid, f=region.f, provenance="intersected outer")


def certify(ch: ChannelParams, grid=DEFAULT_GRID,
            sigma_sweep=DEFAULT_SIGMA_SWEEP, alpha_steps: int = 65,
            alpha_points: int = 5) -> GapReport:
    """Full gap certification of one channel."""
    regime = classify_regime(ch)
    pw = outer_piecewise(ch)
    corner_a, corner_b = corner_points(pw)
    outer = certification_outer_region(ch, grid, sigma_sweep, alpha_steps)
    # In the small-SNR branch the certification outer bound is tighter than
    # the piecewise bound the corners were read off, so project the corners
    # onto its boundary; at large SNR this is the identity.
    def project(p: RatePair) -> RatePair:
        r1 = min(p.R1, outer.r1_max())
        r2 = min(p.R2, max(0.0, float(outer.boundary_at(r1))))
        return RatePair(r1, r2)

    corner_a = project(corner_a)
    corner_b = project(corner_b)
    inner = inner_region(ch, grid=grid, alpha_points=alpha_points)
    gap_a = point_gap(corner_a, inner)
    gap_b = point_gap(corner_b, inner)
    region_gap = additive_gap(outer, inner)
    ach = lambda p, g: RatePair(max(0.0, p.R1 - g), max(0.0, p.R2 - g))
    return GapReport(channel=ch, regime=regime,
                     cornerA=corner_a, cornerB=corner_b,
                     achievedA=ach(corner_a, gap_a), achievedB=ach(corner_b, gap_b),
                     gapA=gap_a, gapB=gap_b, regionGap=region_gap)


def sample_channels(count: int, gain_sq_range=(0.01, 1e4), seed: int = 0):
    """Log-uniform random channels (squared gains in the given range)."""
    lo, hi = gain_sq_range
    if not (0 < lo <= hi) or count < 1:
        raise InvalidParameterError("need 0 < lo <= hi and count >= 1")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        g_sq = np.exp(rng.uniform(math.log(lo), math.log(hi), size=4))
        out.append(make_channel(*np.sqrt(g_sq)))
    return out


def sweep(count: int, gain_sq_range=(0.01, 1e4), seed: int = 0,
          max_workers: int = 1, **certify_kw) -> dict:
    """Certify `count` random channels; aggregate worst gaps per regime."""
    channels = sample_channels(count, gain_sq_range, seed)
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            reports = list(pool.map(lambda c: certify(c, **certify_kw), channels))
    else:
        reports = [certify(c, **certify_kw) for c in channels]
    per_regime = {}
    worst = None
    for rep in reports:
        g = max(rep.gapA, rep.gapB, rep.regionGap)
        agg = per_regime.setdefault(rep.regime, {"count": 0, "maxGap": 0.0})
        agg["count"] += 1
        agg["maxGap"] = max(agg["maxGap"], g)
        if worst is None or g > max(worst.gapA, worst.gapB, worst.regionGap):
            worst = rep
    return {
        "count": count,
        "gainSqRange": list(gain_sq_range),
        "seed": seed,
        "perRegime": {k: per_regime[k] for k in sorted(per_regime)},
        "maxGap": max(max(r.gapA, r.gapB, r.regionGap) for r in reports),
        "worst": worst.to_dict() if worst else None,
        "pass": all(r.passed for r in reports),
    }
