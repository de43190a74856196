"""Seeded synthetic datasets with plantable effects.

Each knob controls one phenomenon: a linear pressure trend, an annual
pressure cycle, a linear admission trend and a coupling from recent
intra-day pressure agitation to the admission rate.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .ingest import (
    HOSP_FILE,
    SEMI_HOURLY_FILE,
    WEATHER_FILE,
    Dataset,
    write_hospitalizations_csv,
    write_semi_hourly_csv,
    write_weather_csv,
)
from .series import TimeSeries
from .variation import READINGS_PER_DAY, DailyProfile

YEAR = 365.25


@dataclass(frozen=True)
class SynthConfig:
    start: dt.date = dt.date(2016, 1, 1)
    days: int = 1096
    base_pressure: float = 1015.0
    pressure_slope: float = -4.0  # mbar per year
    seasonal_amplitude: float = 5.0  # mbar
    pressure_noise: float = 5.0  # AR(1) innovation scale, mbar
    base_rate: float = 0.3  # admissions per day at the start
    hosp_slope: float = 0.25  # admissions per day, gained per year
    coupling: float = 0.0  # log-rate change per sd of recent agitation
    coupling_days: int = 4
    agitation: float = 0.4  # mean half-hourly oscillation amplitude, mbar


def _round(x, digits):
    return np.round(np.asarray(x, dtype=float), digits)


def generate(seed: int = 42, config: SynthConfig | None = None) -> Dataset:
    cfg = config or SynthConfig()
    rng = np.random.default_rng(seed)
    n = cfg.days
    t = np.arange(n)
    years = t / YEAR

    ar = np.empty(n)
    ar[0] = rng.normal(0.0, cfg.pressure_noise)
    innov = rng.normal(0.0, cfg.pressure_noise * np.sqrt(1 - 0.7**2), n)
    for i in range(1, n):
        ar[i] = 0.7 * ar[i - 1] + innov[i]
    daily_p = (
        cfg.base_pressure
        + cfg.pressure_slope * years
        + cfg.seasonal_amplitude * np.cos(2 * np.pi * t / YEAR)
        + ar
    )

    # half-hourly profiles: within-day linear drift toward the next day,
    # plus a daily oscillation of random amplitude and frequency
    amp = rng.gamma(2.0, cfg.agitation / 2.0, n)
    freq = rng.integers(3, 9, n)
    phase = rng.uniform(0, 2 * np.pi, n)
    slot = np.arange(READINGS_PER_DAY) / READINGS_PER_DAY
    nxt = np.append(daily_p[1:], daily_p[-1])
    profiles = []
    for i in range(n):
        r = (
            daily_p[i]
            + (nxt[i] - daily_p[i]) * (slot - 0.5)
            + amp[i] * np.sin(2 * np.pi * freq[i] * slot + phase[i])
            + rng.normal(0.0, 0.05, READINGS_PER_DAY)
        )
        profiles.append(DailyProfile(cfg.start + dt.timedelta(days=i), _round(r, 2)))
    pressure = np.array([p.readings.mean() for p in profiles])

    deltas = np.array([np.abs(np.diff(p.readings)).sum() for p in profiles])
    L = max(1, cfg.coupling_days)
    recent = np.convolve(deltas, np.ones(L) / L)[:n]
    recent[: L - 1] = recent[L - 1]
    z = (recent - recent.mean()) / (recent.std() or 1.0)
    rate = np.maximum(cfg.base_rate + cfg.hosp_slope * years, 0.0) * np.exp(cfg.coupling * z)
    counts = rng.poisson(rate).astype(float)

    doy = 2 * np.pi * (t - 200) / YEAR
    temp_avg = 15.0 + 8.0 * np.cos(doy) + rng.normal(0, 2.0, n)
    temp_min = temp_avg - rng.uniform(3, 8, n)
    temp_max = temp_avg + rng.uniform(3, 8, n)
    wind_avg = rng.gamma(3.0, 1.5, n)
    wind_min = wind_avg * rng.uniform(0.1, 0.6, n)
    wind_max = wind_avg * rng.uniform(1.3, 2.5, n)

    def ts(v, label, digits):
        return TimeSeries(_round(v, digits), label=label, start_date=cfg.start)

    weather = {
        "pressure": ts(pressure, "pressure", 2),
        "temp_min": ts(temp_min, "temp_min", 1),
        "temp_avg": ts(temp_avg, "temp_avg", 1),
        "temp_max": ts(temp_max, "temp_max", 1),
        "wind_min": ts(wind_min, "wind_min", 1),
        "wind_avg": ts(wind_avg, "wind_avg", 1),
        "wind_max": ts(wind_max, "wind_max", 1),
    }
    hosp = TimeSeries(counts, label="hospitalizations", start_date=cfg.start)
    return Dataset(hosp, weather, profiles)


def inject_oscillation(
    profiles: list[DailyProfile], end_days: Iterable[dt.date], L: int, amplitude: float
) -> list[DailyProfile]:
    """Add a +/- ``amplitude`` sawtooth to each day of the ``L``-day windows
    ending on ``end_days``. Raises each touched day's delta by 47*2*amplitude
    at most."""
    targets = set()
    for end in end_days:
        for k in range(L):
            targets.add(end - dt.timedelta(days=k))
    saw = amplitude * np.where(np.arange(READINGS_PER_DAY) % 2 == 0, 1.0, -1.0)
    return [DailyProfile(p.date, p.readings + saw) if p.date in targets else p for p in profiles]


def write_dataset(ds: Dataset, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / WEATHER_FILE, out / HOSP_FILE, out / SEMI_HOURLY_FILE]
    write_weather_csv(paths[0], ds.weather)
    write_hospitalizations_csv(paths[1], ds.hospitalizations)
    write_semi_hourly_csv(paths[2], ds.semi_hourly_pressure)
    return paths
