"""CSV loading, validation, alignment and gap filling.

File schemas (ISO 8601 dates, dot decimals, comma separated)::

    weather.csv              date,pressure,temp_min,temp_avg,temp_max,wind_min,wind_avg,wind_max
    hospitalizations.csv     date,count
    pressure_semihourly.csv  timestamp,pressure      (timestamp = YYYY-MM-DDTHH:MM)
"""

from __future__ import annotations

import csv
import datetime as dt
import logging
import math
import re
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DuplicateDate, IncompleteDay, IngestError, MissingDates, NonMonotonicDates, ParseError
from .series import TimeSeries
from .variation import READINGS_PER_DAY, DailyProfile

log = logging.getLogger(__name__)

WEATHER_COLUMNS = ("date", "pressure", "temp_min", "temp_avg", "temp_max", "wind_min", "wind_avg", "wind_max")
HOSP_COLUMNS = ("date", "count")
SEMI_HOURLY_COLUMNS = ("timestamp", "pressure")

WEATHER_FILE = "weather.csv"
HOSP_FILE = "hospitalizations.csv"
SEMI_HOURLY_FILE = "pressure_semihourly.csv"

DEFAULT_FILL_MBAR = 1000.0

# plain dot-decimal numbers only; rejects "1,013.2", "1.013,2", "nan", "inf"
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_INTEGER = re.compile(r"^\+?\d+$")


def _parse_float(text: str, path, row: int, column: str) -> float:
    t = text.strip()
    if not _NUMBER.match(t):
        raise ParseError(path, row, column, f"not a dot-decimal number: {text!r}")
    return float(t)


def _parse_date(text: str, path, row: int, column: str = "date") -> dt.date:
    try:
        return dt.date.fromisoformat(text.strip())
    except ValueError:
        raise ParseError(path, row, column, f"not an ISO date (YYYY-MM-DD): {text!r}") from None


def _parse_timestamp(text: str, path, row: int) -> dt.datetime:
    t = text.strip()
    try:
        ts = dt.datetime.strptime(t, "%Y-%m-%dT%H:%M")
    except ValueError:
        raise ParseError(path, row, "timestamp", f"not an ISO timestamp (YYYY-MM-DDTHH:MM): {text!r}") from None
    if ts.minute not in (0, 30):
        raise ParseError(path, row, "timestamp", f"not on a half-hour boundary: {text!r}")
    return ts


def _read_rows(path, columns: Sequence[str]) -> list[tuple[int, dict[str, str]]]:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(path, 1, "", "file is empty") from None
        header = [h.strip() for h in header]
        if header != list(columns):
            raise ParseError(path, 1, "", f"header {header} does not match expected {list(columns)}")
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if not rec or all(not c.strip() for c in rec):
                continue
            if len(rec) != len(columns):
                raise ParseError(path, lineno, "", f"expected {len(columns)} fields, got {len(rec)}")
            rows.append((lineno, dict(zip(columns, rec))))
    return rows


def _dated_columns(path, columns: Sequence[str], parse) -> tuple[dt.date, dict[str, list]]:
    rows = _read_rows(path, columns)
    if not rows:
        raise ParseError(path, 2, "", "no data rows")
    dates: list[dt.date] = []
    seen: set[dt.date] = set()
    data: dict[str, list] = {c: [] for c in columns[1:]}
    for lineno, rec in rows:
        d = _parse_date(rec[columns[0]], path, lineno, columns[0])
        if d in seen:
            raise DuplicateDate(path, d)
        if dates and d < dates[-1]:
            raise NonMonotonicDates(f"{path}: row {lineno}: {d.isoformat()} comes after {dates[-1].isoformat()}")
        seen.add(d)
        dates.append(d)
        for c in columns[1:]:
            data[c].append(parse(rec[c], path, lineno, c))
    start = dates[0]
    expected = (dates[-1] - start).days + 1
    if expected != len(dates):
        present = set(dates)
        missing = [start + dt.timedelta(days=i) for i in range(expected) if start + dt.timedelta(days=i) not in present]
        raise MissingDates(path, missing)
    return start, data


def load_daily_csv(path, columns: Sequence[str] = HOSP_COLUMNS, value_column: str | None = None) -> TimeSeries:
    """Load one value column of a daily file whose header equals ``columns``."""
    value_column = value_column or columns[1]
    if value_column not in columns[1:]:
        raise IngestError(f"{value_column!r} is not one of {list(columns[1:])}")
    start, data = _dated_columns(path, columns, _parse_float)
    return TimeSeries(data[value_column], label=value_column, start_date=start)


def load_weather_csv(path) -> dict[str, TimeSeries]:
    start, data = _dated_columns(path, WEATHER_COLUMNS, _parse_float)
    return {c: TimeSeries(v, label=c, start_date=start) for c, v in data.items()}


def _parse_count(text: str, path, row: int, column: str) -> float:
    t = text.strip()
    if not _INTEGER.match(t):
        raise ParseError(path, row, column, f"admission counts must be non-negative integers, got {text!r}")
    return float(int(t))


def load_hospitalizations_csv(path) -> TimeSeries:
    start, data = _dated_columns(path, HOSP_COLUMNS, _parse_count)
    return TimeSeries(data["count"], label="hospitalizations", start_date=start)


def load_semi_hourly_csv(path, fill: bool = False) -> list[DailyProfile]:
    """Bucket half-hourly readings into one profile per calendar day.

    Strict by default: a day without exactly 48 readings raises
    :class:`IncompleteDay`. With ``fill=True`` missing slots repeat the
    previous reading (the next one, for leading gaps).
    """
    path = Path(path)
    by_day: dict[dt.date, dict[int, float]] = defaultdict(dict)
    last = None
    for lineno, rec in _read_rows(path, SEMI_HOURLY_COLUMNS):
        ts = _parse_timestamp(rec["timestamp"], path, lineno)
        if last is not None and ts <= last:
            if ts == last:
                raise ParseError(path, lineno, "timestamp", f"duplicate timestamp {rec['timestamp'].strip()}")
            raise NonMonotonicDates(f"{path}: row {lineno}: {ts.isoformat()} comes after {last.isoformat()}")
        last = ts
        slot = ts.hour * 2 + ts.minute // 30
        by_day[ts.date()][slot] = _parse_float(rec["pressure"], path, lineno, "pressure")

    profiles = []
    for day in sorted(by_day):
        slots = by_day[day]
        if len(slots) != READINGS_PER_DAY:
            if not fill:
                raise IncompleteDay(day, len(slots))
            missing = [i for i in range(READINGS_PER_DAY) if i not in slots]
            log.warning("%s: filling %d missing half-hour readings", day.isoformat(), len(missing))
            readings = [slots.get(i) for i in range(READINGS_PER_DAY)]
            first = next(i for i, v in enumerate(readings) if v is not None)
            for i in range(first):
                readings[i] = readings[first]
            for i in range(first + 1, READINGS_PER_DAY):
                if readings[i] is None:
                    readings[i] = readings[i - 1]
        else:
            readings = [slots[i] for i in range(READINGS_PER_DAY)]
        profiles.append(DailyProfile(day, readings))
    return profiles


def gap_fill_pressure(
    profiles: Iterable[DailyProfile],
    default_mbar: float = DEFAULT_FILL_MBAR,
    start: dt.date | None = None,
    end: dt.date | None = None,
) -> list[DailyProfile]:
    """Insert a constant ``default_mbar`` profile for every missing day in
    [start, end] (defaults: first and last profile dates)."""
    by_date = {p.date: p for p in profiles}
    if not by_date and (start is None or end is None):
        return []
    start = start or min(by_date)
    end = end or max(by_date)
    out = []
    day = start
    while day <= end:
        p = by_date.get(day)
        if p is None:
            log.warning("%s: no pressure readings, filling with %g mbar", day.isoformat(), default_mbar)
            p = DailyProfile(day, np.full(READINGS_PER_DAY, float(default_mbar)))
        out.append(p)
        day += dt.timedelta(days=1)
    return out


# -- writing -----------------------------------------------------------------


def _fmt(v: float) -> str:
    # repr is the shortest string that round-trips to the same double
    if not math.isfinite(v):
        raise ValueError(f"cannot write non-finite value {v}")
    return repr(float(v))


def write_weather_csv(path, weather: Mapping[str, TimeSeries]) -> None:
    cols = WEATHER_COLUMNS[1:]
    dates = weather[cols[0]].dates
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(WEATHER_COLUMNS)
        for i, d in enumerate(dates):
            w.writerow([d.isoformat()] + [_fmt(weather[c].values[i]) for c in cols])


def write_daily_csv(path, s: TimeSeries, column: str) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["date", column])
        for d, v in zip(s.dates, s.values.tolist()):
            w.writerow([d.isoformat(), _fmt(v)])


def write_hospitalizations_csv(path, s: TimeSeries) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HOSP_COLUMNS)
        for d, v in zip(s.dates, s.values.tolist()):
            if v < 0 or v != int(v):
                raise ValueError(f"{d}: admission count must be a non-negative integer, got {v}")
            w.writerow([d.isoformat(), str(int(v))])


def write_semi_hourly_csv(path, profiles: Iterable[DailyProfile]) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SEMI_HOURLY_COLUMNS)
        for p in profiles:
            for slot, v in enumerate(p.readings.tolist()):
                w.writerow([f"{p.date.isoformat()}T{slot // 2:02d}:{(slot % 2) * 30:02d}", _fmt(v)])


# -- dataset -----------------------------------------------------------------


def align_daily(series: Mapping[str, TimeSeries]) -> dict[str, TimeSeries]:
    """Trim dated daily series to their common date range."""
    if not series:
        return {}
    start = max(s.start_date for s in series.values())
    end = min(s.end_date for s in series.values())
    if end < start:
        raise IngestError(f"series do not overlap (latest start {start}, earliest end {end})")
    return {k: s.slice_dates(start, end) for k, s in series.items()}


@dataclass(frozen=True)
class Dataset:
    hospitalizations: TimeSeries
    weather: dict[str, TimeSeries]
    semi_hourly_pressure: list[DailyProfile] = field(default_factory=list, repr=False)

    @property
    def start_date(self) -> dt.date:
        return self.hospitalizations.start_date

    @property
    def end_date(self) -> dt.date:
        return self.hospitalizations.end_date

    def restrict(self, start: dt.date | None = None, end: dt.date | None = None) -> "Dataset":
        start = max(start or self.start_date, self.start_date)
        end = min(end or self.end_date, self.end_date)
        return Dataset(
            self.hospitalizations.slice_dates(start, end),
            {k: s.slice_dates(start, end) for k, s in self.weather.items()},
            [p for p in self.semi_hourly_pressure if start <= p.date <= end],
        )


def assemble(hosp: TimeSeries, weather: Mapping[str, TimeSeries], profiles: Sequence[DailyProfile] = ()) -> Dataset:
    aligned = align_daily({"__hosp__": hosp, **weather})
    h = aligned.pop("__hosp__")
    profiles = [p for p in profiles if h.start_date <= p.date <= h.end_date]
    return Dataset(h, aligned, profiles)


def load_dataset(
    input_dir,
    semi_hourly: bool = True,
    fill_incomplete: bool = False,
    fill_mbar: float = DEFAULT_FILL_MBAR,
) -> Dataset:
    """Load the three standard files from ``input_dir`` and align them.

    Missing days in the half-hourly feed are gap-filled at ``fill_mbar``.
    """
    d = Path(input_dir)
    hosp = load_hospitalizations_csv(d / HOSP_FILE)
    weather = load_weather_csv(d / WEATHER_FILE)
    profiles: list[DailyProfile] = []
    sh = d / SEMI_HOURLY_FILE
    if semi_hourly and sh.exists():
        profiles = load_semi_hourly_csv(sh, fill=fill_incomplete)
    ds = assemble(hosp, weather, profiles)
    if profiles:
        filled = gap_fill_pressure(ds.semi_hourly_pressure, fill_mbar, ds.start_date, ds.end_date)
        ds = Dataset(ds.hospitalizations, ds.weather, filled)
    return ds
