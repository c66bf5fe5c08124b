"""Capacity-region bounds for the Gaussian parallel channel with a
cognitive relay: inner/outer region evaluation and 3-bit constant-gap
certification."""

from .channel import ChannelParams, cap, classify_regime, make_channel
from .gap import GapReport, certify, corner_points, sweep, table1_outer_row
from .gaussmi import (MiQuery, PowerSplit, SignalSystem, build_system,
                      mc_oracle_mi, mutual_info)
from .inner import SchemePoint, hk_constraints, inner_region, table1_scheme
from .outer import (CorrelationPoint, TransformParams, outer_cifc_p2p,
                    outer_I_at, outer_I_region, outer_p2p_bc, outer_piecewise,
                    outer_piecewise_region)
from .regions import (RateConstraintSet, RatePair, Region, additive_gap,
                      contains, convexify, from_constraints, intersect_regions,
                      union_regions)

__all__ = [
    "ChannelParams", "cap", "classify_regime", "make_channel",
    "PowerSplit", "MiQuery", "SignalSystem", "build_system", "mutual_info",
    "mc_oracle_mi",
    "RateConstraintSet", "RatePair", "Region", "from_constraints",
    "union_regions", "intersect_regions", "convexify", "contains",
    "additive_gap",
    "CorrelationPoint", "TransformParams", "outer_I_at", "outer_I_region",
    "outer_piecewise", "outer_piecewise_region", "outer_cifc_p2p",
    "outer_p2p_bc",
    "SchemePoint", "hk_constraints", "table1_scheme", "inner_region",
    "GapReport", "corner_points", "table1_outer_row", "certify", "sweep",
]
