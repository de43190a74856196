"""Time-series toolkit for correlating weather with daily hospital admissions."""

from .autocorr import Correlogram, correlogram
from .errors import BarocorrError
from .finder import CandidateSpec, FinderConfig, FinderReport, enumerate_candidates, run_finder
from .ingest import Dataset, gap_fill_pressure, load_daily_csv, load_dataset, load_semi_hourly_csv
from .peaks import PatternSeries, PeakParams, PeakSeries, detect_peaks, pattern_series, pattern_span
from .series import Range, TimeSeries, eventuality, expand_to_subdaily, mobile_mean, normalise, variation_series
from .spectral import Spectrum, dft_magnitude, zero_dc
from .stats import CorrelationResult, correlate, pearson, rank, spearman
from .variation import DailyProfile, VariationReport, daily_delta, window_variation_report

__version__ = "0.1.0"

__all__ = [
    "BarocorrError",
    "CandidateSpec",
    "CorrelationResult",
    "Correlogram",
    "DailyProfile",
    "Dataset",
    "FinderConfig",
    "FinderReport",
    "PatternSeries",
    "PeakParams",
    "PeakSeries",
    "Range",
    "Spectrum",
    "TimeSeries",
    "VariationReport",
    "correlate",
    "correlogram",
    "daily_delta",
    "detect_peaks",
    "dft_magnitude",
    "enumerate_candidates",
    "eventuality",
    "expand_to_subdaily",
    "gap_fill_pressure",
    "load_daily_csv",
    "load_dataset",
    "load_semi_hourly_csv",
    "mobile_mean",
    "normalise",
    "pattern_series",
    "pattern_span",
    "pearson",
    "rank",
    "run_finder",
    "spearman",
    "variation_series",
    "window_variation_report",
    "zero_dc",
]
