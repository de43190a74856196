"""scikit-learn compatible wrappers.

Transformers take a single series (1-D, or a one-column 2-D array) and
return a 1-D array. Windowed transformers return fewer values than they
receive; ``offset_`` records how many leading samples were consumed.
"""

from __future__ import annotations

import datetime as dt

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import autocorr, peaks, series, spectral
from .errors import ConstantSeries
from .finder import FinderConfig, enumerate_candidates, run_finder
from .series import TimeSeries
from .validation import check_frame, check_series


class _Stateless(TransformerMixin, BaseEstimator):
    def _consumed(self):
        return 0

    def fit(self, X, y=None):
        check_series(X)
        self.n_features_in_ = 1
        self.offset_ = self._consumed()
        return self

    def __sklearn_is_fitted__(self):
        return True


class MinMaxNormaliser(TransformerMixin, BaseEstimator):
    """Learn min and max on fit; map them onto ``feature_range``."""

    def __init__(self, feature_range=(0.0, 1.0)):
        self.feature_range = feature_range

    def fit(self, X, y=None):
        x = check_series(X, min_length=2)
        series.Range(*self.feature_range)
        self.data_min_ = float(x.min())
        self.data_max_ = float(x.max())
        if self.data_max_ == self.data_min_:
            raise ConstantSeries("cannot normalise a constant series")
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "data_min_")
        x = check_series(X)
        a, b = self.feature_range
        return (x - self.data_min_) / (self.data_max_ - self.data_min_) * (b - a) + a

    def fit_transform(self, X, y=None):
        x = check_series(X, min_length=2)
        self.fit(x)
        return series.normalise(x, self.feature_range).values

    def inverse_transform(self, Z):
        check_is_fitted(self, "data_min_")
        z = check_series(Z)
        a, b = self.feature_range
        return (z - a) / (b - a) * (self.data_max_ - self.data_min_) + self.data_min_


class MovingAverage(_Stateless):
    def __init__(self, window=7, weights=None):
        self.window = window
        self.weights = weights

    def _consumed(self):
        return self.window - 1

    def transform(self, X):
        return series.mobile_mean(check_series(X), self.window, self.weights).values


class VariationSeries(_Stateless):
    def __init__(self, length=2, unsigned=False):
        self.length = length
        self.unsigned = unsigned

    def _consumed(self):
        return self.length - 1

    def transform(self, X):
        return series.variation_series(check_series(X), self.length, self.unsigned).values


class Eventuality(_Stateless):
    def transform(self, X):
        return series.eventuality(check_series(X)).values


class SubdailyExpander(_Stateless):
    def __init__(self, parts=48):
        self.parts = parts

    def transform(self, X):
        return series.expand_to_subdaily(check_series(X), self.parts).values


class PeakDetector(_Stateless):
    """Ternary peak labels from a trailing window of ``w`` samples."""

    def __init__(self, w=7, f=1.0):
        self.w = w
        self.f = f

    def _consumed(self):
        return self.w - 1

    def transform(self, X):
        params = peaks.PeakParams(self.w, self.f)
        return np.asarray(peaks.detect_peaks(check_series(X), params).values, dtype=float)


class PatternMatcher(_Stateless):
    """Binary occurrence series of ``pattern`` in a peak-label series."""

    def __init__(self, pattern=(1, 0, 1), w=7, f=1.0):
        self.pattern = pattern
        self.w = w
        self.f = f

    def _consumed(self):
        return len(self.pattern) - 1

    def transform(self, X):
        x = check_series(X)
        if not np.all(np.isin(x, (-1.0, 0.0, 1.0))):
            raise ValueError("PatternMatcher expects peak labels in {-1, 0, 1}")
        ps = peaks.PeakSeries(x.astype(np.int8), "", peaks.PeakParams(self.w, self.f))
        return np.asarray(peaks.pattern_series(ps, self.pattern).values, dtype=float)


class Autocorrelation(BaseEstimator):
    def __init__(self, max_lag=10):
        self.max_lag = max_lag

    def fit(self, X, y=None):
        cg = autocorr.correlogram(check_series(X), self.max_lag)
        self.lags_ = cg.lags
        self.coefficients_ = cg.values
        return self


class MagnitudeSpectrum(BaseEstimator):
    """One-sided DFT magnitudes; ``sample_spacing`` is in days."""

    def __init__(self, sample_spacing=1.0, zero_dc=True):
        self.sample_spacing = sample_spacing
        self.zero_dc = zero_dc

    def fit(self, X, y=None):
        x = check_series(X, min_length=2)
        s = TimeSeries(x, step=dt.timedelta(days=self.sample_spacing))
        sp = spectral.dft_magnitude(s)
        if self.zero_dc:
            sp = spectral.zero_dc(sp)
        self.frequencies_ = sp.frequencies
        self.magnitudes_ = sp.magnitudes
        return self


class CorrelationFinder(BaseEstimator):
    """Search weather transforms for the strongest correlation with ``y``.

    ``X`` holds one weather series per column, all daily and aligned with
    ``y`` (admissions per day).
    """

    def __init__(
        self,
        variation_lengths=tuple(range(1, 8)),
        w=7,
        f=1.0,
        max_lag=7,
        patterns=peaks.DEFAULT_PATTERNS,
        threshold=0.2,
        source_names=None,
        n_jobs=1,
    ):
        self.variation_lengths = variation_lengths
        self.w = w
        self.f = f
        self.max_lag = max_lag
        self.patterns = patterns
        self.threshold = threshold
        self.source_names = source_names
        self.n_jobs = n_jobs

    def fit(self, X, y):
        arr, names = check_frame(X, self.source_names)
        yv = check_series(y, name="y")
        if arr.shape[0] != yv.size:
            raise ValueError(f"X has {arr.shape[0]} rows, y has {yv.size}")
        weather = {n: TimeSeries(arr[:, i], label=n) for i, n in enumerate(names)}
        config = FinderConfig(
            sources=tuple(names),
            variation_lengths=tuple(self.variation_lengths),
            peak_params=peaks.PeakParams(self.w, self.f),
            max_lag=self.max_lag,
            patterns=tuple(tuple(p) for p in self.patterns),
            threshold=self.threshold,
        )
        self.candidates_ = enumerate_candidates(config, weather)
        self.report_ = run_finder(self.candidates_, weather, TimeSeries(yv), self.threshold, self.n_jobs)
        self.feature_names_in_ = np.array(names, dtype=object)
        self.n_features_in_ = len(names)
        self.best_pearson_ = self.report_.best_pearson
        self.best_spearman_ = self.report_.best_spearman
        self.relevant_ = self.report_.relevant
        return self
