import datetime as dt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barocorr.errors import LengthMismatch, NoQualifyingDays
from barocorr.variation import DailyProfile, daily_delta, delta_series, variation_grid, window_variation_report

DAY0 = dt.date(2016, 1, 1)


def test_constant_profile():
    assert daily_delta(DailyProfile(DAY0, [1013.0] * 48)) == 0.0


def test_alternating_profile():
    readings = [1000.0 if i % 2 == 0 else 1010.0 for i in range(48)]
    assert daily_delta(DailyProfile(DAY0, readings)) == 470.0


def test_ramp_profile():
    assert daily_delta(DailyProfile(DAY0, np.arange(1000.0, 1048.0))) == 47.0


def test_profile_needs_48_readings():
    with pytest.raises(ValueError):
        DailyProfile(DAY0, [1.0] * 47)
    with pytest.raises(ValueError):
        DailyProfile(DAY0, [1.0] * 47 + [np.nan])


readings = st.lists(st.floats(900, 1100, allow_nan=False), min_size=48, max_size=48)


@given(readings, st.floats(-50, 50), st.floats(0.1, 10))
def test_delta_shift_and_scale(rs, c, alpha):
    base = daily_delta(DailyProfile(DAY0, rs))
    assert base >= 0
    assert daily_delta(DailyProfile(DAY0, np.array(rs) + c)) == pytest.approx(base, abs=1e-8)
    assert daily_delta(DailyProfile(DAY0, np.array(rs) * alpha)) == pytest.approx(alpha * base, rel=1e-9, abs=1e-9)


def test_report_hand_oracle():
    rep = window_variation_report([10, 10, 10, 30, 10], [0, 0, 0, 2, 0], 2)
    # windows ending days 2..5: (10,10) (10,10) (10,30) (30,10)
    assert rep.per_count_means == {0: 40 / 3, 2: 20.0}
    assert rep.overall_mean == 15.0
    assert rep.ge2_mean == 20.0
    assert rep.pct_increase_ge2 == pytest.approx(100 / 3, abs=0.01)


def test_equal_deltas_give_zero_increase():
    rep = window_variation_report([4.2] * 30, [0, 1, 2, 3, 0] * 6, 4)
    assert rep.pct_increase_ge2 == pytest.approx(0.0, abs=1e-12)


def test_no_qualifying_days():
    with pytest.raises(NoQualifyingDays):
        window_variation_report([1, 2, 3, 4], [0, 0, 0, 0], 2)
    rep = window_variation_report([1, 2, 3, 4], [0, 0, 0, 0], 2, require_qualifying=False)
    assert rep.pct_increase_ge2 is None and rep.ge2_mean is None


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        window_variation_report([1, 2, 3], [0, 2], 2)


@settings(max_examples=60)
@given(st.lists(st.tuples(st.floats(0, 100), st.integers(0, 4)), min_size=8, max_size=60), st.integers(1, 7))
def test_group_means_weighted_average_is_overall(rows, L):
    d = [a for a, _ in rows]
    h = [b for _, b in rows]
    rep = window_variation_report(d, h, L, require_qualifying=False)
    total = sum(rep.per_count_means[c] * rep.per_count_sizes[c] for c in rep.per_count_means)
    assert total / sum(rep.per_count_sizes.values()) == pytest.approx(rep.overall_mean, rel=1e-9, abs=1e-9)


def test_grid_matches_individual_reports():
    rng = np.random.default_rng(3)
    d = rng.gamma(2, 5, 100)
    h = rng.poisson(0.8, 100)
    grid = variation_grid(d, h, range(2, 8))
    assert [g.interval_length for g in grid] == list(range(2, 8))
    for g in grid:
        assert g == window_variation_report(d, h, g.interval_length)


def test_delta_series_requires_contiguous_days():
    p0 = DailyProfile(DAY0, [1.0] * 48)
    p2 = DailyProfile(DAY0 + dt.timedelta(days=2), [1.0] * 48)
    with pytest.raises(ValueError):
        delta_series([p0, p2])
    assert delta_series([p0]).start_date == DAY0
