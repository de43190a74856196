"""Brute-force search for the weather transform best correlated with admissions."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import BarocorrError, EmptyConfig, NoCandidates
from .peaks import DEFAULT_PATTERNS, PeakParams, detect_peaks, pattern_series
from .series import TimeSeries, as_series, variation_series
from .stats import CorrelationResult, correlate

log = logging.getLogger(__name__)

WEATHER_SOURCES = ("pressure", "temp_min", "temp_avg", "temp_max", "wind_avg", "wind_max")
DEFAULT_THRESHOLD = 0.2
DEFAULT_MAX_LAG = 7


@dataclass(frozen=True)
class FinderConfig:
    sources: tuple[str, ...] = WEATHER_SOURCES
    include_raw: bool = True
    # interval lengths in days; an L-day interval spans L+1 daily values
    variation_lengths: tuple[int, ...] = tuple(range(1, 8))
    peak_params: PeakParams | None = field(default_factory=PeakParams)
    max_lag: int = DEFAULT_MAX_LAG
    patterns: tuple[tuple[int, ...], ...] = DEFAULT_PATTERNS
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if self.max_lag < 0:
            raise EmptyConfig(f"max_lag must be >= 0, got {self.max_lag}")
        if any(L < 1 for L in self.variation_lengths):
            raise EmptyConfig("variation lengths must be >= 1 day")


@dataclass(frozen=True)
class CandidateSpec:
    source: str
    transform: str  # raw | variation | peaks | pattern
    length: int | None = None
    params: PeakParams | None = None
    lag: int = 0
    pattern: tuple[int, ...] | None = None

    @property
    def name(self) -> str:
        if self.transform == "raw":
            return self.source
        if self.transform == "variation":
            return f"variation({self.source}, {self.length}d)"
        p = self.params
        if self.transform == "peaks":
            return f"peaks({self.source}, w={p.w}, f={p.f:g}, lag={self.lag})"
        pat = ",".join(str(v) for v in self.pattern)
        return f"pattern({self.source}, ({pat}), w={p.w}, f={p.f:g})"


@dataclass(frozen=True)
class CandidateResult:
    spec: CandidateSpec
    result: CorrelationResult | None
    skipped: str | None = None


@dataclass(frozen=True)
class FinderReport:
    candidates_evaluated: int
    results: tuple[CandidateResult, ...]
    best_pearson: tuple[CandidateSpec, CorrelationResult] | None
    best_spearman: tuple[CandidateSpec, CorrelationResult] | None
    threshold: float
    relevant: bool

    @property
    def skipped(self) -> list[CandidateResult]:
        return [r for r in self.results if r.result is None]

    def ranked(self) -> list[CandidateResult]:
        """Evaluated candidates by descending max(|r|, |rho|); stable on ties."""
        ok = [r for r in self.results if r.result is not None]
        return sorted(ok, key=lambda c: -max(abs(c.result.pearson_r), abs(c.result.spearman_rho)))


def _transform(spec: CandidateSpec, s: TimeSeries) -> TimeSeries:
    if spec.transform == "raw":
        return s
    if spec.transform == "variation":
        return variation_series(s, spec.length + 1)
    peaks = detect_peaks(s, spec.params)
    if spec.transform == "peaks":
        return peaks.as_series()
    if spec.transform == "pattern":
        return pattern_series(peaks, spec.pattern).as_series()
    raise ValueError(f"unknown transform {spec.transform!r}")


def enumerate_candidates(config: FinderConfig, weather: Mapping[str, TimeSeries] | None = None) -> list[CandidateSpec]:
    """Deterministic candidate list.

    When ``weather`` is given, pattern candidates whose pattern never occurs
    in that data are dropped.
    """
    out: list[CandidateSpec] = []
    for src in config.sources:
        if config.include_raw:
            out.append(CandidateSpec(src, "raw"))
        for L in config.variation_lengths:
            out.append(CandidateSpec(src, "variation", length=L))
        if config.peak_params is None:
            continue
        for lag in range(config.max_lag + 1):
            out.append(CandidateSpec(src, "peaks", params=config.peak_params, lag=lag))
        for pat in config.patterns:
            spec = CandidateSpec(src, "pattern", params=config.peak_params, pattern=tuple(pat))
            if weather is not None:
                try:
                    if _transform(spec, as_series(weather[src])).values.sum() == 0:
                        log.info("dropping %s: pattern never occurs", spec.name)
                        continue
                except BarocorrError as exc:
                    log.info("dropping %s: %s", spec.name, exc)
                    continue
            out.append(spec)
    if not out:
        raise EmptyConfig("configuration yields no candidates")
    return out


def align(x: TimeSeries, hosp: TimeSeries, lag: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Pair x[j] with hosp at x's day plus ``lag``, trimmed to the overlap."""
    if x.start_date is not None and hosp.start_date is not None:
        base = (x.start_date - hosp.start_date).days
    else:
        base = x.offset - hosp.offset
    shift = base + lag
    lo = max(0, -shift)
    hi = min(len(x), len(hosp) - shift)
    if hi <= lo:
        return np.empty(0), np.empty(0)
    return x.values[lo:hi], hosp.values[lo + shift : hi + shift]


def evaluate(spec: CandidateSpec, weather: Mapping[str, TimeSeries], hosp: TimeSeries) -> CandidateResult:
    try:
        x = _transform(spec, as_series(weather[spec.source], label=spec.source))
        xa, ya = align(x, hosp, spec.lag)
        return CandidateResult(spec, correlate(xa, ya))
    except BarocorrError as exc:
        log.info("skipping %s: %s", spec.name, exc)
        return CandidateResult(spec, None, skipped=str(exc))


def run_finder(
    candidates: Sequence[CandidateSpec],
    weather: Mapping[str, TimeSeries],
    hosp,
    threshold: float = DEFAULT_THRESHOLD,
    n_jobs: int = 1,
) -> FinderReport:
    """Correlate every candidate against admissions and keep the strongest
    by absolute Pearson and absolute Spearman coefficient."""
    candidates = list(candidates)
    if not candidates:
        raise NoCandidates("no candidates to evaluate")
    hosp = as_series(hosp, label="hospitalizations")
    if n_jobs == 1:
        results = [evaluate(c, weather, hosp) for c in candidates]
    else:
        with ThreadPoolExecutor(max_workers=None if n_jobs < 1 else n_jobs) as pool:
            # map preserves submission order
            results = list(pool.map(lambda c: evaluate(c, weather, hosp), candidates))

    best_p = best_s = None
    for cr in results:
        r = cr.result
        if r is None:
            continue
        # strict comparison keeps the first candidate on ties
        if best_p is None or abs(r.pearson_r) > abs(best_p[1].pearson_r):
            best_p = (cr.spec, r)
        if best_s is None or abs(r.spearman_rho) > abs(best_s[1].spearman_rho):
            best_s = (cr.spec, r)
    strongest = max(
        abs(best_p[1].pearson_r) if best_p else 0.0,
        abs(best_s[1].spearman_rho) if best_s else 0.0,
    )
    return FinderReport(
        candidates_evaluated=sum(r.result is not None for r in results),
        results=tuple(results),
        best_pearson=best_p,
        best_spearman=best_s,
        threshold=threshold,
        relevant=strongest >= threshold,
    )
