"""Achievable region: rate splitting + superposition with Gaussian inputs.

`hk_constraints` evaluates the seven-inequality achievable region for one
power split; `table1_scheme` produces the regime-specific corner-point
splits (relay silent, full cooperation, or noise-floor private relaying);
`inner_region` unions the corner schemes with a coarse split grid and takes
the convex hull (time sharing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import ChannelParams, classify_regime
from .gaussmi import MiQuery, PowerSplit, build_system, mutual_info
from .regions import (DEFAULT_GRID, RateConstraintSet, Region, convexify,
                      from_constraints, make_grid, union_regions)


@dataclass(frozen=True)
class SchemePoint:
    """A regime-specific corner scheme: which regime and corner it targets."""

    regime: str
    corner: str  # "A" (max R1) or "B" (max R2)
    split: PowerSplit
    rationale: str


def hk_constraints(ch: ChannelParams, s: PowerSplit) -> RateConstraintSet:
    """The seven rate constraints of the achievable region for one split.

    All mutual-information terms are exact Gaussian quantities with a
    degenerate time-sharing variable; right-hand sides are clamped at 0.
    """
    sys = build_system(ch, s)

    def mi(target, args, cond=()):
        return mutual_info(sys, MiQuery(target, frozenset(args), frozenset(cond)))

    t1 = mi("Y1", {"X1", "U1c"}, {"U2c"})
    t2 = mi("Y2", {"X2", "U2c"}, {"U1c"})
    t3 = mi("Y1", {"X1", "U1c", "U2c"})
    t4 = mi("Y2", {"X2"}, {"U1c", "U2c"})
    t5 = mi("Y2", {"X2", "U2c", "U1c"})
    t6 = mi("Y1", {"X1"}, {"U1c", "U2c"})
    t7 = mi("Y1", {"X1", "U2c"}, {"U1c"})
    t8 = mi("Y2", {"X2", "U1c"}, {"U2c"})

    clamp = lambda v: max(0.0, v)
    return RateConstraintSet([
        (1, 0, clamp(t1)),
        (0, 1, clamp(t2)),
        (1, 1, clamp(t3 + t4)),
        (1, 1, clamp(t5 + t6)),
        (1, 1, clamp(t7 + t8)),
        (2, 1, clamp(t3 + t6 + t8)),
        (1, 2, clamp(t5 + t4 + t7)),
    ])


def _noise_floor_fraction(cross_gain: float) -> float:
    """Relay power fraction putting a relayed private stream's interference
    at the unintended receiver exactly at the noise floor (or all available
    power when the cross link is too weak to ever reach it)."""
    if cross_gain == 0:
        return 1.0
    return min(1.0, 1.0 / cross_gain**2)


def _scheme_split(regime: str, corner: str, ch: ChannelParams) -> tuple[PowerSplit, str]:
    if regime == "W":
        # relay silent, both sources private; corners coincide
        return PowerSplit(), "relay silent"
    if regime == "S1":
        if corner == "A":
            return PowerSplit(beta1c=1.0), "relay carries user-1 common"
        b2p = _noise_floor_fraction(ch.h1c)
        return (PowerSplit(beta2p=b2p, beta2c=1.0 - b2p),
                "noise-floor private boost for user 2")
    if regime == "S2":
        if corner == "A":
            return PowerSplit(beta1p=1.0), "relay coherent with source 1"
        b2p = _noise_floor_fraction(ch.h1c)
        return (PowerSplit(beta1c=1.0 - b2p, beta2p=b2p),
                "noise-floor private boost for user 2, common help for user 1")
    if regime == "M1":
        if corner == "A":
            return PowerSplit(beta1c=1.0), "relay carries user-1 common"
        return PowerSplit(), "relay silent"
    if regime == "M2":
        if corner == "A":
            return PowerSplit(beta1c=1.0), "relay carries user-1 common"
        b1p = _noise_floor_fraction(ch.h2c)
        return (PowerSplit(alpha2=0.0, beta1p=b1p, beta2c=1.0 - b1p),
                "noise-floor private boost for user 1, common help for user 2")
    raise AssertionError(f"unhandled regime {regime}")


def table1_scheme(ch: ChannelParams, corner: str) -> SchemePoint:
    """Power split targeting one corner of the regime's outer-bound row.

    Swapped regimes reuse the mirror-channel scheme with user roles (and
    therefore corners) exchanged.
    """
    if corner not in ("A", "B"):
        raise ValueError(f"corner must be 'A' or 'B', got {corner!r}")
    regime = classify_regime(ch)
    if regime.endswith("-swapped"):
        base = regime.removesuffix("-swapped")
        split, why = _scheme_split(base, "B" if corner == "A" else "A", ch.swapped())
        split = split.mirrored()
        why += " (mirrored)"
    else:
        split, why = _scheme_split(regime, corner, ch)
    return SchemePoint(regime=regime, corner=corner, split=split, rationale=why)


def default_splits(ch: ChannelParams, alpha_points: int = 5):
    """Coarse sweep grid plus a few targeted splits.

    Every split is achievable, so adding splits can only enlarge the region;
    the regime corner schemes anchor the corner points and the grid
    fills in the middle of the boundary.
    """
    splits = [table1_scheme(ch, "A").split, table1_scheme(ch, "B").split]
    # full-power relay help in each direction, plus both noise-floor schemes
    splits += [
        PowerSplit(beta1p=1.0),
        PowerSplit(beta2p=1.0),
        PowerSplit(beta1c=1.0),
        PowerSplit(beta2c=1.0),
    ]
    # 1-D sweep of the relay's power division between the two users: share t
    # to user 1, 1-t to user 2, each share first feeding the private stream
    # up to the cross-receiver noise floor and spilling into the common
    # stream.  This traces the simultaneous-superposition boundary that time
    # sharing of the corner schemes alone cannot reach.
    nf1p = _noise_floor_fraction(ch.h2c)  # user-1 private cap (heard at rx 2)
    nf2p = _noise_floor_fraction(ch.h1c)
    for i in range(17):
        t = i / 16
        splits.append(PowerSplit(beta1c=t, beta2c=1.0 - t))
        splits.append(PowerSplit(beta1p=t, beta2p=1.0 - t))
        b1p = min(t, nf1p)
        b2p = min(1.0 - t, nf2p)
        splits.append(PowerSplit(beta1p=b1p, beta1c=t - b1p,
                                 beta2p=b2p, beta2c=1.0 - t - b2p))

    alphas = [i / (alpha_points - 1) for i in range(alpha_points)]
    betas = [
        (0.0, 0.0, 0.0, 0.0),
        (1.0, 0.0, 0.0, 0.0),
        (0.0, 1.0, 0.0, 0.0),
        (0.0, 0.0, 1.0, 0.0),
        (0.0, 0.0, 0.0, 1.0),
        (0.25, 0.25, 0.25, 0.25),
    ]
    for a1 in alphas:
        for a2 in alphas:
            for b in betas:
                splits.append(PowerSplit(a1, a2, *b))
    return splits


def inner_region(ch: ChannelParams, extra_splits=(), grid=DEFAULT_GRID,
                 alpha_points: int = 5) -> Region:
    """Convex hull of the achievable pentagons over all considered splits."""
    splits = list(default_splits(ch, alpha_points)) + list(extra_splits)
    sets = [hk_constraints(ch, s) for s in splits]
    if isinstance(grid, int):
        extent = max(cs.r1_extent() for cs in sets)
        grid = make_grid(extent, grid)
    region = union_regions([from_constraints(cs, grid) for cs in sets])
    hull = convexify(region)
    return Region(grid=hull.grid, f=hull.f, provenance="achievable region")
