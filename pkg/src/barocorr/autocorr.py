"""Correlograms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstantSeries, SeriesTooShort
from .series import as_series

DEFAULT_MAX_LAG = 10


@dataclass(frozen=True)
class Correlogram:
    max_lag: int
    coefficients: tuple[tuple[int, float], ...]

    @property
    def lags(self) -> np.ndarray:
        return np.array([k for k, _ in self.coefficients])

    @property
    def values(self) -> np.ndarray:
        return np.array([r for _, r in self.coefficients])


def correlogram(s, max_lag: int = DEFAULT_MAX_LAG) -> Correlogram:
    """Autocorrelation r_k for k = 0..max_lag.

    Every lag sums over the same terminal range t = max_lag..n-1 (0-based),
    and deviations are taken from the mean of the whole series.
    """
    s = as_series(s)
    y = s.values
    n = y.size
    if max_lag < 0:
        raise ValueError(f"max_lag must be >= 0, got {max_lag}")
    if n <= max_lag + 1:
        raise SeriesTooShort(f"correlogram with max_lag={max_lag} needs more than {max_lag + 1} values, got {n}")
    d = y - y.mean()
    head = d[max_lag:]
    denom = float(head @ head)
    if denom == 0.0:
        raise ConstantSeries(f"series {s.label!r} is constant over the summation range")
    coeffs = tuple(
        (k, float(head @ d[max_lag - k : n - k]) / denom) for k in range(max_lag + 1)
    )
    return Correlogram(max_lag, coeffs)
