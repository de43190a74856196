import datetime as dt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barocorr.errors import BadRange, BadWeights, ConstantSeries, EmptySeries, SeriesTooShort
from barocorr.series import (
    HALF_HOUR,
    Range,
    TimeSeries,
    eventuality,
    expand_to_subdaily,
    mobile_mean,
    normalise,
    variation_series,
)

from .oracles import window_scan

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
series_st = st.lists(finite, min_size=2, max_size=60)


def test_timeseries_is_immutable():
    s = TimeSeries([1, 2, 3], label="x")
    with pytest.raises(ValueError):
        s.values[0] = 5
    with pytest.raises(AttributeError):
        s.label = "y"


def test_dates_follow_step(start):
    s = TimeSeries([1, 2, 3], start_date=start)
    assert s.dates == [start, start + dt.timedelta(days=1), start + dt.timedelta(days=2)]
    assert s.end_date == dt.date(2016, 1, 3)


def test_range_requires_a_below_b():
    with pytest.raises(BadRange):
        Range(1, 1)


# -- normalise ---------------------------------------------------------------


def test_normalise_endpoints_and_midpoint():
    assert normalise([0, 5, 10], Range(0, 1)).values.tolist() == [0.0, 0.5, 1.0]


def test_normalise_worked_example(worked_example):
    # (x - 900) / 120 by hand
    expected = [0, 0, 0, 0, 0, 0, 1, 0, 100 / 120, 0]
    np.testing.assert_allclose(normalise(worked_example).values, expected, rtol=0, atol=1e-15)


def test_normalise_constant_raises():
    with pytest.raises(ConstantSeries):
        normalise([7, 7, 7], (0, 1))
    with pytest.raises(ConstantSeries):
        normalise([7, 7, 7], (-3, 10))


def test_normalise_empty_raises():
    with pytest.raises(EmptySeries):
        normalise([])


def test_normalise_keeps_metadata(start):
    s = TimeSeries([3, 1, 2], label="p", start_date=start)
    out = normalise(s, (-1, 1))
    assert out.label == "p" and out.start_date == start and len(out) == 3
    assert out.values.min() == -1 and out.values.max() == 1


@given(series_st, st.tuples(st.floats(-100, 100), st.floats(0.1, 100)))
def test_normalise_idempotent_and_argextrema(xs, ab):
    a, width = ab
    r = Range(a, a + width)
    x = np.array(xs)
    if x.max() == x.min():
        return
    once = normalise(x, r).values
    twice = normalise(once, r).values
    np.testing.assert_allclose(twice, once, rtol=1e-12, atol=1e-12 * max(1.0, abs(a) + width))
    # rounding can create ties, but the input's extremes stay extremes
    assert once[np.argmax(x)] == once.max()
    assert once[np.argmin(x)] == once.min()
    assert once.min() == r.a and once.max() == r.b


# -- variation_series ----------------------------------------------------------


def test_variation_signed_example():
    assert variation_series([1, 3, 2], 2).values.tolist() == [2.0, -1.0]
    assert window_scan([1, 3, 2], 2, False) == [2, -1]


def test_variation_unsigned_example():
    assert variation_series([1, 3, 2], 3, unsigned=True).values.tolist() == [3.0]
    assert window_scan([1, 3, 2], 3, True) == [3]


@pytest.mark.parametrize("length", [2, 3, 4])
@pytest.mark.parametrize("unsigned", [False, True])
def test_variation_constant_is_zero(length, unsigned):
    assert variation_series([5, 5, 5, 5], length, unsigned).values.tolist() == [0.0] * (5 - length)


def test_variation_errors():
    with pytest.raises(SeriesTooShort):
        variation_series([1, 2], 3)
    with pytest.raises(SeriesTooShort):
        variation_series([1, 2, 3], 1)


def test_variation_dates_window_end(start):
    s = TimeSeries([1, 2, 4, 8], start_date=start)
    out = variation_series(s, 3)
    assert out.start_date == start + dt.timedelta(days=2)
    assert out.offset == 2


@given(series_st, st.integers(2, 10), st.booleans())
def test_variation_matches_window_scan(xs, length, unsigned):
    if len(xs) < length:
        return
    out = variation_series(xs, length, unsigned).values
    assert len(out) == len(xs) - length + 1
    np.testing.assert_allclose(out, window_scan(xs, length, unsigned), rtol=1e-12, atol=1e-6)


@given(series_st, st.integers(2, 10))
def test_variation_monotone_nonnegative(xs, length):
    xs = sorted(xs)
    if len(xs) < length:
        return
    assert np.all(variation_series(xs, length).values >= 0)


# -- mobile_mean ---------------------------------------------------------------


def test_mobile_mean_worked_example(worked_example):
    out = mobile_mean(worked_example, 7).values
    np.testing.assert_allclose(out, [917.14, 917.14, 931.43, 931.43], atol=0.01)


def test_mobile_mean_window_one_is_identity():
    assert mobile_mean([1, 2, 3], 1).values.tolist() == [1.0, 2.0, 3.0]


def test_mobile_mean_weighted():
    assert mobile_mean([1, 2], 2, weights=[1, 3]).values.tolist() == [1.75]


def test_mobile_mean_errors():
    with pytest.raises(SeriesTooShort):
        mobile_mean([1, 2], 3)
    with pytest.raises(BadWeights):
        mobile_mean([1, 2, 3], 2, weights=[1, 2, 3])
    with pytest.raises(BadWeights):
        mobile_mean([1, 2, 3], 2, weights=[1, -1])


@given(series_st, st.integers(1, 10), st.booleans(), st.data())
def test_mobile_mean_within_window_bounds(xs, window, weighted, data):
    if len(xs) < window:
        return
    weights = None
    if weighted:
        weights = data.draw(st.lists(st.floats(0.01, 10), min_size=window, max_size=window))
    out = mobile_mean(xs, window, weights).values
    assert len(out) == len(xs) - window + 1
    for t, v in enumerate(out):
        win = xs[t : t + window]
        assert min(win) <= v <= max(win)


# -- eventuality ---------------------------------------------------------------


def test_eventuality_examples():
    assert eventuality([0, 2, 0, 5]).values.tolist() == [0, 1, 0, 1]
    assert eventuality([0, 0, 0]).values.tolist() == [0, 0, 0]
    assert eventuality([-1, 0.5]).values.tolist() == [1, 1]


def test_eventuality_empty():
    with pytest.raises(EmptySeries):
        eventuality([])


@given(st.lists(finite, min_size=1, max_size=50))
def test_eventuality_idempotent(xs):
    once = eventuality(xs)
    assert eventuality(once).values.tolist() == once.values.tolist()
    assert len(once) == len(xs)


# -- expand_to_subdaily --------------------------------------------------------


def test_expand_examples(start):
    assert expand_to_subdaily([48], 48).values.tolist() == [1.0] * 48
    np.testing.assert_allclose(expand_to_subdaily([2], 48).values, [1 / 24] * 48, rtol=1e-15)
    out = expand_to_subdaily(TimeSeries([0, 48], start_date=start), 48)
    assert out.values.tolist() == [0.0] * 48 + [1.0] * 48
    assert out.values.sum() == 48
    assert out.step == HALF_HOUR


@settings(max_examples=50)
@given(st.lists(st.integers(0, 30), min_size=1, max_size=200), st.integers(1, 96))
def test_expand_preserves_sum(xs, parts):
    out = expand_to_subdaily(xs, parts).values
    assert len(out) == parts * len(xs)
    assert abs(out.sum() - sum(xs)) <= 1e-9 * max(1, sum(xs))
