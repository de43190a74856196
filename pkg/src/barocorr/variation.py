"""Intra-day pressure variation and its aggregation around admission days."""

from __future__ import annotations

import datetime as dt
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import LengthMismatch, NoQualifyingDays, SeriesTooShort
from .series import TimeSeries, as_series

READINGS_PER_DAY = 48


@dataclass(frozen=True)
class DailyProfile:
    date: dt.date
    readings: np.ndarray = field(repr=False)

    def __post_init__(self):
        r = np.array(self.readings, dtype=float)
        if r.shape != (READINGS_PER_DAY,):
            raise ValueError(f"{self.date}: a daily profile needs {READINGS_PER_DAY} readings, got {r.size}")
        if not np.all(np.isfinite(r)):
            raise ValueError(f"{self.date}: readings must be finite")
        r.setflags(write=False)
        object.__setattr__(self, "readings", r)

    def __eq__(self, other):
        if not isinstance(other, DailyProfile):
            return NotImplemented
        return self.date == other.date and np.array_equal(self.readings, other.readings)

    __hash__ = None


@dataclass(frozen=True)
class VariationReport:
    interval_length: int
    per_count_means: dict[int, float]
    per_count_sizes: dict[int, int]
    overall_mean: float
    ge2_mean: float | None
    pct_increase_ge2: float | None

    def as_dict(self) -> dict:
        return {
            "interval_length": self.interval_length,
            "per_count_means": {str(k): v for k, v in self.per_count_means.items()},
            "per_count_sizes": {str(k): v for k, v in self.per_count_sizes.items()},
            "overall_mean": self.overall_mean,
            "ge2_mean": self.ge2_mean,
            "pct_increase_ge2": self.pct_increase_ge2,
        }


def daily_delta(p: DailyProfile) -> float:
    """Sum of absolute differences between consecutive readings."""
    return float(np.abs(np.diff(p.readings)).sum())


def delta_series(profiles) -> TimeSeries:
    """Daily delta series from a gapless, date-ordered list of profiles."""
    profiles = list(profiles)
    if not profiles:
        raise SeriesTooShort("no daily profiles")
    start = profiles[0].date
    for i, p in enumerate(profiles):
        if p.date != start + dt.timedelta(days=i):
            raise ValueError(f"profiles are not contiguous at {p.date} (expected {start + dt.timedelta(days=i)})")
    return TimeSeries([daily_delta(p) for p in profiles], label="daily_delta", start_date=start)


def window_means(deltas, L: int) -> TimeSeries:
    """Mean delta over each day and its L-1 predecessors."""
    d = as_series(deltas)
    if L < 1:
        raise ValueError(f"interval length must be positive, got {L}")
    if len(d) < L:
        raise SeriesTooShort(f"need at least {L} days, got {len(d)}")
    windows = np.lib.stride_tricks.sliding_window_view(d.values, L)
    return d.derive(windows.mean(axis=1), shift=L - 1, label=f"delta_mean_{L}d")


def window_variation_report(deltas, hosp, L: int, *, require_qualifying: bool = True) -> VariationReport:
    """Group L-day window means of delta by the admission count on the
    window's last day and compare the >= 2 group with the overall mean.

    With ``require_qualifying=False`` a run with no day of two or more
    admissions returns a report whose percentage is ``None``.
    """
    d, h = as_series(deltas), as_series(hosp)
    if len(d) != len(h):
        raise LengthMismatch(f"deltas ({len(d)}) and admissions ({len(h)}) differ in length")
    if d.start_date is not None and h.start_date is not None and d.start_date != h.start_date:
        raise LengthMismatch(f"deltas start {d.start_date}, admissions start {h.start_date}")
    means = window_means(d, L).values
    counts = h.values[L - 1 :].astype(int)

    groups: dict[int, list[float]] = defaultdict(list)
    for c, m in zip(counts.tolist(), means.tolist()):
        groups[c].append(m)
    per_count = {c: float(np.mean(v)) for c, v in sorted(groups.items())}
    sizes = {c: len(v) for c, v in sorted(groups.items())}
    overall = float(means.mean())

    qualifying = means[counts >= 2]
    if qualifying.size == 0:
        if require_qualifying:
            raise NoQualifyingDays(f"no day with two or more admissions (L={L})")
        ge2, pct = None, None
    else:
        ge2 = float(qualifying.mean())
        pct = 100.0 * (ge2 / overall - 1.0) if overall != 0 else None
    return VariationReport(L, per_count, sizes, overall, ge2, pct)


def variation_grid(deltas, hosp, lengths=range(2, 8)) -> list[VariationReport]:
    return [window_variation_report(deltas, hosp, L, require_qualifying=False) for L in lengths]


def bubble_table(report: VariationReport) -> list[tuple[int, float, int]]:
    """(admissions, mean window delta, occurrences) rows for bubble plots."""
    return [(c, report.per_count_means[c], report.per_count_sizes[c]) for c in report.per_count_means]
