"""The time-series carrier and its elementary transformations."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import BadRange, BadWeights, ConstantSeries, EmptySeries, SeriesTooShort

DAY = dt.timedelta(days=1)
HALF_HOUR = dt.timedelta(minutes=30)


@dataclass(frozen=True)
class TimeSeries:
    """Immutable labelled sequence of real values.

    ``offset`` is the index, in the series this one was derived from, of the
    first value. Windowed transforms advance it (and ``start_date``) so that
    derived series stay aligned with their source.
    """

    values: np.ndarray = field(repr=False)
    label: str = ""
    start_date: dt.date | None = None
    step: dt.timedelta = DAY
    offset: int = 0

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1:
            raise ValueError(f"values must be 1-D, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values.tolist())

    def __repr__(self):
        start = self.start_date.isoformat() if self.start_date else None
        return f"TimeSeries(label={self.label!r}, n={len(self)}, start_date={start})"

    @property
    def dates(self) -> list[dt.date] | None:
        """Calendar dates of each value, for daily series with a start date."""
        if self.start_date is None:
            return None
        return [self.start_date + i * self.step for i in range(len(self))]

    @property
    def end_date(self) -> dt.date | None:
        if self.start_date is None:
            return None
        return self.start_date + (len(self) - 1) * self.step

    def derive(self, values, *, shift: int = 0, label: str | None = None, step=None) -> "TimeSeries":
        """New series whose first value sits ``shift`` steps after ours."""
        start = self.start_date
        if start is not None and shift:
            start = start + shift * self.step
        return replace(
            self,
            values=values,
            label=self.label if label is None else label,
            start_date=start,
            step=self.step if step is None else step,
            offset=self.offset + shift,
        )

    def slice_dates(self, start: dt.date | None = None, end: dt.date | None = None) -> "TimeSeries":
        """Restrict to the inclusive date range [start, end]."""
        if self.start_date is None:
            raise ValueError("series has no dates")
        lo = 0 if start is None else max(0, (start - self.start_date) // self.step)
        hi = len(self) if end is None else min(len(self), (end - self.start_date) // self.step + 1)
        if hi <= lo:
            raise EmptySeries(f"{self.label!r}: no values between {start} and {end}")
        return self.derive(self.values[lo:hi], shift=lo)


@dataclass(frozen=True)
class Range:
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        if not self.a < self.b:
            raise BadRange(f"range needs a < b, got ({self.a}, {self.b})")


def as_series(s, label: str = "") -> TimeSeries:
    """Wrap array-likes into a :class:`TimeSeries`; pass series through."""
    if isinstance(s, TimeSeries):
        return s
    name = getattr(s, "name", None)
    return TimeSeries(np.asarray(s, dtype=float).ravel(), label=label or (str(name) if name is not None else ""))


def _nonempty(s: TimeSeries) -> np.ndarray:
    if len(s) == 0:
        raise EmptySeries(f"series {s.label!r} is empty")
    return s.values


def normalise(s, r: Range | tuple[float, float] = (0.0, 1.0)) -> TimeSeries:
    """Min-max rescale onto ``[a, b]``."""
    s = as_series(s)
    x = _nonempty(s)
    if not isinstance(r, Range):
        r = Range(*r)
    lo, hi = x.min(), x.max()
    if hi == lo:
        raise ConstantSeries(f"cannot normalise constant series {s.label!r}")
    z = (x - lo) / (hi - lo) * (r.b - r.a) + r.a
    # pin the extremes so min/max land exactly on the range ends
    z[x == lo] = r.a
    z[x == hi] = r.b
    return s.derive(z)


def variation_series(s, length: int, unsigned: bool = False) -> TimeSeries:
    """Change across each run of ``length`` consecutive points.

    Signed: last minus first. Unsigned: total absolute step-to-step change.
    The value for window ``[t, t+length-1]`` is dated at ``t+length-1``.
    """
    s = as_series(s)
    x = _nonempty(s)
    if length < 2:
        raise SeriesTooShort(f"variation length must be >= 2, got {length}")
    if x.size < length:
        raise SeriesTooShort(f"series {s.label!r} has {x.size} values, variation length is {length}")
    if unsigned:
        # summed per window rather than via a cumulative sum, which drifts
        steps = np.lib.stride_tricks.sliding_window_view(np.abs(np.diff(x)), length - 1)
        out = steps.sum(axis=1)
    else:
        out = x[length - 1 :] - x[: x.size - length + 1]
    return s.derive(out, shift=length - 1)


def mobile_mean(s, window: int, weights: Sequence[float] | None = None) -> TimeSeries:
    """Trailing moving average, optionally weighted (weights sum-normalised)."""
    s = as_series(s)
    x = _nonempty(s)
    if window < 1:
        raise SeriesTooShort(f"window must be positive, got {window}")
    if x.size < window:
        raise SeriesTooShort(f"series {s.label!r} has {x.size} values, window is {window}")
    windows = np.lib.stride_tricks.sliding_window_view(x, window)
    if weights is None:
        out = windows.mean(axis=1)
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != (window,):
            raise BadWeights(f"expected {window} weights, got {w.size}")
        total = w.sum()
        if not total > 0:
            raise BadWeights(f"weights must have positive sum, got {total}")
        out = windows @ w / total
    lo, hi = windows.min(axis=1), windows.max(axis=1)
    out = np.clip(out, lo, hi)
    return s.derive(out, shift=window - 1)


def eventuality(s) -> TimeSeries:
    """Indicator of nonzero values."""
    s = as_series(s)
    x = _nonempty(s)
    return s.derive((x != 0).astype(float))


def expand_to_subdaily(s, parts: int = 48) -> TimeSeries:
    """Spread each daily value evenly over ``parts`` sub-daily slots."""
    s = as_series(s)
    x = _nonempty(s)
    if parts < 1:
        raise ValueError(f"parts must be positive, got {parts}")
    out = np.repeat(x / parts, parts)
    return TimeSeries(out, label=s.label, start_date=s.start_date, step=s.step / parts)
