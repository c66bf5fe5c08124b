import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crbounds import cap, classify_regime, make_channel
from crbounds.channel import REGIMES, ChannelParams
from crbounds.errors import InvalidParameterError


class TestMakeChannel:
    def test_reference_channel(self):
        ch = make_channel(1, 5, 0.5, 1)
        assert (ch.h11, ch.h22, ch.h1c, ch.h2c) == (1, 5, 0.5, 1)

    def test_signed_gains_store_magnitudes(self):
        ch = make_channel(-2, 3, 0, 1)
        assert (ch.h11, ch.h22, ch.h1c, ch.h2c) == (2, 3, 0, 1)

    def test_zero_channel(self):
        ch = make_channel(0, 0, 0, 0)
        assert (ch.h11, ch.h22, ch.h1c, ch.h2c) == (0, 0, 0, 0)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_nonfinite_rejected(self, bad):
        with pytest.raises(InvalidParameterError):
            make_channel(bad, 1, 1, 1)

    def test_negative_direct_construction_rejected(self):
        with pytest.raises(InvalidParameterError):
            ChannelParams(-1, 1, 1, 1)

    def test_json_roundtrip(self):
        ch = make_channel(1.5, 2.5, 0.25, 0.75)
        assert ChannelParams.from_dict(ch.to_dict()) == ch


class TestCap:
    def test_anchor_values(self):
        assert cap(0) == 0
        assert cap(1) == 1
        assert cap(3) == 2

    def test_accepts_slightly_negative(self):
        assert cap(-0.5) == pytest.approx(-1.0)

    def test_domain_error(self):
        with pytest.raises(InvalidParameterError):
            cap(-1)

    @given(st.floats(min_value=0, max_value=1e6),
           st.floats(min_value=1, max_value=1e3))
    def test_scaling_inequality(self, x, a):
        # cap(a*x) <= cap(x) + log2(a) for a >= 1
        assert cap(a * x) <= cap(x) + math.log2(a) + 1e-9

    def test_monotone(self):
        xs = np.linspace(0, 100, 1000)
        vals = [cap(x) for x in xs]
        assert all(b >= a for a, b in zip(vals, vals[1:]))


class TestClassifyRegime:
    def test_reference_channel_is_weak(self):
        assert classify_regime(make_channel(1, 5, 0.5, 1)) == "W"

    def test_strong_subcase_one(self):
        # h11^2 = 1 >= h1c^2/h2c^2 = 4/4
        assert classify_regime(make_channel(1, 1, 2, 2)) == "S1"

    def test_mixed_subcase_two(self):
        # 1 < 4, 4 >= 1, 1 < 4/1
        assert classify_regime(make_channel(1, 2, 2, 1)) == "M2"

    def test_swapped_labels(self):
        ch = make_channel(1, 2, 2, 1)
        sw = ch.swapped()
        assert classify_regime(sw) == "M2-swapped"

    def test_ties_go_weak(self):
        assert classify_regime(make_channel(1, 1, 1, 1)) == "W"

    def test_partition_of_gain_space(self):
        # exactly one label per random channel, and its defining
        # inequalities hold
        rng = np.random.default_rng(0)
        counts = dict.fromkeys(REGIMES, 0)
        for _ in range(10**5):
            g = np.exp(rng.uniform(-3, 3, size=4))
            ch = make_channel(*g)
            label = classify_regime(ch)
            counts[label] += 1
            d1 = ch.h11**2 >= ch.h1c**2
            d2 = ch.h22**2 >= ch.h2c**2
            if label == "W":
                assert d1 and d2
            elif label.startswith("S"):
                assert not d1 and not d2
                assert (ch.h11**2 >= ch.h1c**2 / ch.h2c**2) == (label == "S1")
            elif label.endswith("-swapped"):
                assert d1 and not d2
            else:
                assert not d1 and d2
                assert (ch.h11**2 >= ch.h1c**2 / ch.h2c**2) == (label == "M1")
        assert all(v > 0 for v in counts.values())
