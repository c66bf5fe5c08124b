"""Exact mutual information for the jointly Gaussian rate-splitting system.

Every signal is a linear combination of six independent unit-variance
sources (U1p, U1c, U2p, U2c, Z1, Z2), so conditional variances reduce to
least-squares residuals of coefficient vectors and every mutual-information
term of the achievable region is a log-ratio of two such residuals.

Rates follow the complex-circular convention log2(ratio), i.e. no 1/2
factor, matching cap(x) = log2(1+x).

A Monte-Carlo estimator of the same quantities is provided as an
independent cross-check of the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelParams
from .errors import InvalidParameterError, NumericalError

_SOURCES = ("U1p", "U1c", "U2p", "U2c", "Z1", "Z2")
_QUERY_VARS = ("X1", "X2", "U1c", "U2c")

#: Relative cutoff for singular directions when projecting onto a
#: conditioning set (relative to the largest singular value).
PINV_RCOND = 1e-12


@dataclass(frozen=True)
class PowerSplit:
    """Power fractions of the rate-splitting Gaussian input.

    alpha_i is the fraction of source i's power on its private stream
    (the rest goes on the common stream); beta_* are the relay's power
    fractions on the four streams.  The betas may sum to less than one:
    the relay is allowed to idle part of its power (several schemes
    silence it entirely).
    """

    alpha1: float = 1.0
    alpha2: float = 1.0
    beta1p: float = 0.0
    beta1c: float = 0.0
    beta2p: float = 0.0
    beta2c: float = 0.0

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta1p", "beta1c", "beta2p", "beta2c"):
            v = getattr(self, name)
            if not (math.isfinite(v) and -1e-12 <= v <= 1 + 1e-12):
                raise InvalidParameterError(f"{name}={v!r} must lie in [0, 1]")
        bsum = self.beta1p + self.beta1c + self.beta2p + self.beta2c
        if bsum > 1 + 1e-9:
            raise InvalidParameterError(f"relay power fractions sum to {bsum} > 1")

    def mirrored(self) -> "PowerSplit":
        """The same split with user roles exchanged."""
        return PowerSplit(self.alpha2, self.alpha1,
                          self.beta2p, self.beta2c, self.beta1p, self.beta1c)


@dataclass(frozen=True)
class MiQuery:
    """I(target ; args | cond) with target in {Y1, Y2} and the sets drawn
    from {X1, X2, U1c, U2c}.  X-symbols are used as scalar covariance rows,
    not expanded into their generating U-pairs."""

    target: str
    args: frozenset = frozenset()
    cond: frozenset = frozenset()

    def __post_init__(self):
        if self.target not in ("Y1", "Y2"):
            raise InvalidParameterError(f"target {self.target!r} must be Y1 or Y2")
        object.__setattr__(self, "args", frozenset(self.args))
        object.__setattr__(self, "cond", frozenset(self.cond))
        bad = (self.args | self.cond) - set(_QUERY_VARS)
        if bad:
            raise InvalidParameterError(f"unknown query variables {sorted(bad)}")
        if self.args & self.cond:
            raise InvalidParameterError("argument and conditioning sets must be disjoint")
        if not self.args:
            raise InvalidParameterError("argument set must be non-empty")


@dataclass
class SignalSystem:
    """Coefficient map of every named signal over the six unit sources."""

    channel: ChannelParams
    split: PowerSplit
    rows: dict = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def row(self, name: str) -> np.ndarray:
        return self.rows[name]

    def covariance(self, names=("Y1", "Y2", "U1p", "U1c", "U2p", "U2c")) -> np.ndarray:
        a = np.array([self.rows[n] for n in names])
        return a @ a.T

    def cond_var(self, target: str, given: frozenset) -> float:
        """Var(target | given), via least-squares projection of coefficient rows."""
        key = (target, given)
        if key not in self._cache:
            y = self.rows[target]
            if not given:
                v = float(y @ y)
            else:
                a = np.array([self.rows[n] for n in sorted(given)]).T
                coef, _, _, sv = np.linalg.lstsq(a, y, rcond=PINV_RCOND)
                if not np.all(np.isfinite(coef)):
                    raise NumericalError("singular conditioning block")
                r = y - a @ coef
                v = float(r @ r)
            self._cache[key] = v
        return self._cache[key]


def build_system(ch: ChannelParams, s: PowerSplit) -> SignalSystem:
    """Assemble the joint Gaussian system for a channel and power split.

    X1 = sqrt(a1) U1p + sqrt(1-a1) U1c, X2 likewise on (U2p, U2c), and the
    relay spends beta-fractions of its power on all four streams, so its
    contribution adds coherently to the source signals on shared streams.
    """
    def vec(**kw):
        v = np.zeros(len(_SOURCES))
        for name, c in kw.items():
            v[_SOURCES.index(name)] = c
        return v

    a1, a2 = s.alpha1, s.alpha2
    x1 = vec(U1p=math.sqrt(a1), U1c=math.sqrt(max(0.0, 1 - a1)))
    x2 = vec(U2p=math.sqrt(a2), U2c=math.sqrt(max(0.0, 1 - a2)))
    xc = vec(U1p=math.sqrt(s.beta1p), U1c=math.sqrt(s.beta1c),
             U2p=math.sqrt(s.beta2p), U2c=math.sqrt(s.beta2c))
    y1 = ch.h11 * x1 + ch.h1c * xc + vec(Z1=1.0)
    y2 = ch.h22 * x2 + ch.h2c * xc + vec(Z2=1.0)
    rows = {
        "U1p": vec(U1p=1.0), "U1c": vec(U1c=1.0),
        "U2p": vec(U2p=1.0), "U2c": vec(U2c=1.0),
        "X1": x1, "X2": x2, "Xc": xc, "Y1": y1, "Y2": y2,
    }
    return SignalSystem(channel=ch, split=s, rows=rows)


def mutual_info(sys: SignalSystem, q: MiQuery) -> float:
    """Closed-form I(target; args | cond) in bits."""
    v_cond = sys.cond_var(q.target, q.cond)
    v_full = sys.cond_var(q.target, q.cond | q.args)
    # Unit receiver noise keeps both variances >= 1, so the ratio is safe.
    if v_full <= 0 or v_cond <= 0:
        raise NumericalError(f"non-positive conditional variance ({v_cond}, {v_full})")
    return math.log2(v_cond / v_full)


def mc_oracle_mi(ch: ChannelParams, s: PowerSplit, q: MiQuery,
                 n: int = 10**6, seed: int = 0) -> float:
    """Sampling estimate of the same quantity, independent of mutual_info.

    Draws n joint samples, estimates the two conditional variances as
    mean-squared residuals of linear regressions, and forms the log-ratio.
    Deterministic for a fixed seed.
    """
    if n < 10**4:
        raise InvalidParameterError(f"need n >= 1e4 samples, got {n}")
    sys = build_system(ch, s)
    rng = np.random.default_rng(seed)
    xi = rng.standard_normal((n, len(_SOURCES)))
    y = xi @ sys.row(q.target)

    def resid_var(names):
        if not names:
            return float(np.mean(y * y))
        a = xi @ np.array([sys.row(m) for m in sorted(names)]).T
        coef, _, _, _ = np.linalg.lstsq(a, y, rcond=None)
        r = y - a @ coef
        return float(np.mean(r * r))

    return math.log2(resid_var(q.cond) / resid_var(q.cond | q.args))
