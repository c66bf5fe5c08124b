import math

import numpy as np
import pytest

from crbounds import (CorrelationPoint, TransformParams, cap, make_channel,
                      outer_I_at, outer_I_region, outer_cifc_p2p, outer_p2p_bc,
                      outer_piecewise, outer_piecewise_region)
from crbounds.errors import InfeasibleTransformError, InvalidParameterError
from crbounds.regions import from_constraints

REF = make_channel(1, 5, 0.5, 1)


def bounds_of(cs):
    """Pick out (R1, R2, [sums]) from a four-constraint set."""
    b1 = next(b for a1, a2, b in cs if (a1, a2) == (1, 0))
    b2 = next(b for a1, a2, b in cs if (a1, a2) == (0, 1))
    sums = [b for a1, a2, b in cs if (a1, a2) == (1, 1)]
    return b1, b2, sums


def random_channels(n, seed, lo=-3, hi=3):
    rng = np.random.default_rng(seed)
    return [make_channel(*np.exp(rng.uniform(lo, hi, size=4))) for _ in range(n)]


class TestCorrelationPoint:
    def test_outside_disk(self):
        with pytest.raises(InvalidParameterError):
            CorrelationPoint(0.9, 0.9)

    def test_negative(self):
        with pytest.raises(InvalidParameterError):
            CorrelationPoint(-0.1, 0.0)


class TestTightestBoundPointwise:
    def test_uncorrelated_r1_bound(self):
        cs = outer_I_at(REF, CorrelationPoint(0, 0))
        b1, _, _ = bounds_of(cs)
        assert b1 == pytest.approx(math.log2(2.25), abs=1e-12)

    def test_fully_correlated_r1_bound(self):
        cs = outer_I_at(REF, CorrelationPoint(1, 0))
        b1, _, _ = bounds_of(cs)
        assert b1 == pytest.approx(cap(2.25), abs=1e-12)

    def test_disconnected_relay(self):
        cs = outer_I_at(make_channel(1, 5, 0, 0), CorrelationPoint(0, 0))
        b1, b2, sums = bounds_of(cs)
        assert b1 == pytest.approx(1.0, abs=1e-12)
        assert b2 == pytest.approx(cap(25), abs=1e-12)
        # degenerate sum bounds fall back to the single-rate total
        assert all(s == pytest.approx(b1 + b2, abs=1e-12) for s in sums)

    def test_min_rz_steps(self):
        with pytest.raises(InvalidParameterError):
            outer_I_at(REF, CorrelationPoint(0, 0), rz_steps=2)

    def test_noise_correlation_min_beats_zero(self):
        # the inner minimization can only tighten the value at rho_z = 0
        for ch in random_channels(20, seed=11):
            if ch.h1c == 0 or ch.h2c == 0:
                continue
            for r1, r2 in [(0.0, 0.0), (0.6, 0.3), (1.0, 0.0)]:
                cs = outer_I_at(ch, CorrelationPoint(r1, r2))
                _, _, sums = bounds_of(cs)
                h11, h22, h1c, h2c = ch.h11, ch.h22, ch.h1c, ch.h2c
                # recompute the first sum bound's bracket at rho_z = 0
                q = h1c / h2c
                den = h2c**2 * (1 - r2**2) + 1
                arg0 = h11**2 + q**2 - (r1 * h11 * h2c - q) ** 2 / den
                if arg0 <= -1 + 1e-12:
                    continue
                first = cap(h22**2 + h2c**2 + 2 * r2 * h2c * h22)
                assert sums[0] <= max(0.0, first + cap(arg0)) + 1e-9


class TestTightestBoundRegion:
    def test_zero_relay_rectangle(self):
        r = outer_I_region(make_channel(1, 5, 0, 0), rho_grid=8)
        assert r.r1_max() == pytest.approx(1.0, abs=1e-9)
        assert float(r.boundary_at(0.0)) == pytest.approx(cap(25), abs=1e-9)
        assert float(r.boundary_at(1.0)) == pytest.approx(cap(25), abs=1e-9)

    def test_zero_relay_rho_independent(self):
        ch = make_channel(0.7, 2.0, 0, 0)
        for c in [CorrelationPoint(0, 0), CorrelationPoint(1, 0),
                  CorrelationPoint(0.5, 0.5)]:
            b1, b2, _ = bounds_of(outer_I_at(ch, c))
            assert b1 == pytest.approx(cap(0.49), abs=1e-9)
            assert b2 == pytest.approx(cap(4.0), abs=1e-9)

    def test_grid_refinement_monotone(self):
        # 61 = 4*15 + 1, so the coarse correlation grid is a subset of the
        # fine one and the union can only grow
        coarse = outer_I_region(REF, rho_grid=16)
        fine = outer_I_region(REF, rho_grid=61, grid=coarse.grid)
        mask = np.isfinite(coarse.f)
        assert np.all(fine.f[mask] >= coarse.f[mask] - 1e-9)

    def test_min_rho_grid(self):
        with pytest.raises(InvalidParameterError):
            outer_I_region(REF, rho_grid=4)


class TestPiecewiseBound:
    def test_reference_channel_values(self):
        b1, b2, sums = bounds_of(outer_piecewise(REF))
        assert b1 == pytest.approx(3.0, abs=1e-12)
        assert b2 == pytest.approx(math.log2(26) + 2, abs=1e-12)
        assert all(s == pytest.approx(math.log2(26) + 4, abs=1e-12) for s in sums)

    def test_zero_relay_sum_guard(self):
        b1, b2, sums = bounds_of(outer_piecewise(make_channel(1, 1, 0, 0)))
        assert all(s == pytest.approx(cap(1) + cap(1) + 3, abs=1e-12) for s in sums)

    def test_contains_tightest_bound(self):
        for ch in random_channels(12, seed=21):
            th2 = outer_piecewise_region(ch)
            th1 = outer_I_region(ch, rho_grid=16, grid=th2.grid)
            mask = np.isfinite(th1.f)
            assert np.all(th2.f[mask] >= th1.f[mask] - 1e-6)
            assert np.all(th2.grid[mask] <= th2.r1_max() + 1e-6)


class TestCifcP2pBound:
    def test_silent_relay_r1_extent(self):
        # h1c = 0: the relay cannot help user 1, R1 capped by the split noise
        r = outer_cifc_p2p(make_channel(1, 5, 0, 1), sigma11sq=0.5)
        assert r.r1_max() == pytest.approx(cap(2), abs=1e-9)

    def test_full_coherence_sum(self):
        ch = make_channel(1, 2, 1, 1)
        r = outer_cifc_p2p(ch, sigma11sq=0.5)
        # the union contains the alpha = 0 set, whose sum bound is the fully
        # coherent relay term; the covering can overshoot by at most the
        # largest possible excess term
        at_zero = cap((ch.h22 + ch.h2c) ** 2) + cap(ch.h11**2 / 0.5)
        overshoot = cap(ch.h1c**2 / 0.5)
        assert float(r.boundary_at(0.0)) >= at_zero - 1e-9
        assert float(r.boundary_at(0.0)) <= at_zero + overshoot + 1e-9

    def test_sigma_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            outer_cifc_p2p(REF, sigma11sq=0.0)
        with pytest.raises(InvalidParameterError):
            outer_cifc_p2p(REF, sigma11sq=1.5)

    def test_alpha_refinement_shrinks(self):
        # interval coverings: finer sweeps give (weakly) tighter supersets
        coarse = outer_cifc_p2p(REF, alpha_steps=9)
        fine = outer_cifc_p2p(REF, alpha_steps=129, grid=coarse.grid)
        mask = np.isfinite(fine.f)
        assert np.all(coarse.f[mask] >= fine.f[mask] - 1e-9)


class TestP2pBcBound:
    def test_feasible_example(self):
        ch = make_channel(1, 1, 2, 1)
        r = outer_p2p_bc(ch, TransformParams(0.5, 0.5))
        assert not r.is_empty()
        # alpha = 1 kills relay help for user 1; alpha = 0 for user 2
        assert r.r1_max() >= cap(2) - 1e-9
        assert float(r.boundary_at(0.0)) >= cap(2) - 1e-9

    def test_degradedness_violation(self):
        with pytest.raises(InfeasibleTransformError):
            outer_p2p_bc(make_channel(1, 1, 0.5, 1), TransformParams(0.5, 0.5))

    def test_rectangle_union_shape(self):
        ch = make_channel(1, 1, 2, 1)
        r = outer_p2p_bc(ch, TransformParams(0.5, 0.5))
        fin = r.f[np.isfinite(r.f)]
        assert np.all(np.diff(fin) <= 1e-9)
