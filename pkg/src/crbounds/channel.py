"""Standard-form channel model: gains, the capacity function, regime labels.

The channel is two parallel point-to-point links plus a relay heard by both
receivers.  In standard form all transmit powers and noise variances are one,
so four nonnegative real amplitude gains describe the channel completely:

    Y1 = h11*X1 + h1c*Xc + Z1
    Y2 = h22*X2 + h2c*Xc + Z2
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError

#: Regime labels.  "W" = both direct links at least as strong as the relay
#: links, "S*" = both relay links stronger, "M*" = relay stronger only at
#: receiver 1.  The "-swapped" labels cover the mirror case (relay stronger
#: only at receiver 2) via user-index exchange.
REGIMES = ("W", "S1", "S2", "M1", "M2", "M1-swapped", "M2-swapped")


@dataclass(frozen=True)
class ChannelParams:
    """Nonnegative amplitude gains; squared values are SNRs."""

    h11: float
    h22: float
    h1c: float
    h2c: float

    def __post_init__(self):
        for name in ("h11", "h22", "h1c", "h2c"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise InvalidParameterError(f"{name}={v!r} must be finite and >= 0")

    def swapped(self) -> "ChannelParams":
        """Channel with user indices 1 and 2 exchanged."""
        return ChannelParams(self.h22, self.h11, self.h2c, self.h1c)

    def to_dict(self) -> dict:
        return {"h11": self.h11, "h22": self.h22, "h1c": self.h1c, "h2c": self.h2c}

    @classmethod
    def from_dict(cls, d: dict) -> "ChannelParams":
        try:
            return make_channel(d["h11"], d["h22"], d["h1c"], d["h2c"])
        except (KeyError, TypeError) as exc:
            raise InvalidParameterError(f"bad channel object: {exc}") from exc


def make_channel(g11, g22, g1c, g2c) -> ChannelParams:
    """Build a standard-form channel from (possibly signed) gains.

    Receivers and transmitters can compensate phases, so only the magnitudes
    matter and are stored.
    """
    gains = []
    for g in (g11, g22, g1c, g2c):
        g = float(g)
        if not math.isfinite(g):
            raise InvalidParameterError(f"gain {g!r} is not finite")
        gains.append(abs(g))
    return ChannelParams(*gains)


def cap(x) -> float:
    """log2(1 + x), the unit-noise Gaussian capacity function.

    Accepts any x > -1: intermediate outer-bound expressions can transiently
    dip below zero; callers clamp final rate bounds at 0.
    """
    if not x > -1:
        raise InvalidParameterError(f"cap argument {x!r} not in (-1, inf)")
    return math.log2(1 + x)


def classify_regime(ch: ChannelParams) -> str:
    """Assign the unique regime label of a channel.

    Ties go to the weak side of each comparison (">=" throughout), so the
    classification is total and deterministic.  The sub-case split within S
    and M compares h11^2 against h1c^2/h2c^2 (ratio taken as +inf when
    h2c = 0, which cannot occur inside S).
    """
    d1 = ch.h11**2 >= ch.h1c**2  # direct link 1 at least as strong as relay link 1
    d2 = ch.h22**2 >= ch.h2c**2
    if d1 and d2:
        return "W"
    if not d1 and not d2:
        return "S1" if ch.h11**2 >= ch.h1c**2 / ch.h2c**2 else "S2"
    if not d1 and d2:
        thresh = ch.h1c**2 / ch.h2c**2 if ch.h2c > 0 else math.inf
        return "M1" if ch.h11**2 >= thresh else "M2"
    # mirror case: relay stronger only at receiver 2
    sw = ch.swapped()
    thresh = sw.h1c**2 / sw.h2c**2 if sw.h2c > 0 else math.inf
    return "M1-swapped" if sw.h11**2 >= thresh else "M2-swapped"
