"""Peak detection and peak-pattern occurrence series."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PatternTooLong, SeriesTooShort
from .series import TimeSeries, as_series

DEFAULT_PATTERNS = ((1, -1, 1), (1, 0, 1), (1, 0, -1))


@dataclass(frozen=True)
class PeakParams:
    w: int = 7
    f: float = 1.0

    def __post_init__(self):
        if int(self.w) != self.w or self.w < 2:
            raise ValueError(f"peak window w must be an integer >= 2, got {self.w}")
        if not self.f > 0:
            raise ValueError(f"threshold factor f must be > 0, got {self.f}")


@dataclass(frozen=True)
class PeakSeries:
    """Ternary series; index 0 corresponds to source index ``offset``."""

    values: np.ndarray = field(repr=False)
    source_label: str
    params: PeakParams
    offset: int = 0
    source: TimeSeries | None = field(default=None, repr=False, compare=False)

    def __len__(self):
        return self.values.size

    def as_series(self) -> TimeSeries:
        label = f"peaks({self.source_label}, w={self.params.w}, f={self.params.f:g})"
        if self.source is not None:
            return self.source.derive(self.values, shift=self.params.w - 1, label=label)
        return TimeSeries(self.values, label=label, offset=self.offset)


@dataclass(frozen=True)
class PatternSeries:
    values: np.ndarray = field(repr=False)
    pattern: tuple[int, ...]
    params: PeakParams
    offset: int = 0
    source: TimeSeries | None = field(default=None, repr=False, compare=False)

    def __len__(self):
        return self.values.size

    @property
    def occurrences(self) -> int:
        return int(self.values.sum())

    def as_series(self) -> TimeSeries:
        label = "pattern(" + ",".join(str(p) for p in self.pattern) + ")"
        if self.source is not None:
            shift = pattern_span(self.params, len(self.pattern)) - 1
            return self.source.derive(self.values, shift=shift, label=label)
        return TimeSeries(self.values, label=label, offset=self.offset)


def window_stats(s, w: int) -> tuple[np.ndarray, np.ndarray]:
    """Trailing-window mean and population standard deviation."""
    x = as_series(s).values
    if x.size < w:
        raise SeriesTooShort(f"series has {x.size} values, peak window is {w}")
    windows = np.lib.stride_tricks.sliding_window_view(x, w)
    mean = windows.mean(axis=1)
    std = windows.std(axis=1)
    return mean, std


def detect_peaks(s, params: PeakParams | None = None) -> PeakSeries:
    """Mark points above (1) or below (-1) their trailing window's mean by
    more than ``f`` standard deviations. The window ends at, and includes,
    the candidate point."""
    params = params or PeakParams()
    s = as_series(s)
    x = s.values
    w, f = params.w, params.f
    if x.size < w:
        raise SeriesTooShort(f"series {s.label!r} has {x.size} values, peak window is {w}")
    windows = np.lib.stride_tricks.sliding_window_view(x, w)
    mean = windows.mean(axis=1)
    dev = windows - mean[:, None]
    std = np.sqrt((dev * dev).mean(axis=1))
    last = dev[:, -1]
    out = np.zeros(windows.shape[0], dtype=np.int8)
    out[last > f * std] = 1
    out[last < -f * std] = -1
    # a flat window has no peak, whatever rounding did to mean and std
    out[np.ptp(windows, axis=1) == 0] = 0
    out.setflags(write=False)
    return PeakSeries(out, s.label, params, offset=s.offset + w - 1, source=s)


def pattern_series(ps: PeakSeries, pattern) -> PatternSeries:
    """1 where the peak values starting at t equal ``pattern``, else 0.

    Index t is attributed to the last peak of the match."""
    pat = tuple(int(p) for p in pattern)
    if not pat or any(p not in (-1, 0, 1) for p in pat):
        raise ValueError(f"pattern must be a non-empty tuple over {{-1, 0, 1}}, got {pattern!r}")
    m = len(pat)
    if len(ps) < m:
        raise PatternTooLong(f"pattern of length {m} is longer than peak series of length {len(ps)}")
    windows = np.lib.stride_tricks.sliding_window_view(np.asarray(ps.values), m)
    out = np.all(windows == np.array(pat), axis=1).astype(np.int8)
    out.setflags(write=False)
    return PatternSeries(out, pat, ps.params, offset=ps.offset + m - 1, source=ps.source)


def pattern_span(params: PeakParams, pattern_len: int) -> int:
    """Number of source days one pattern occurrence depends on."""
    return params.w + pattern_len - 1
