"""Input checks shared by the estimator wrappers."""

from __future__ import annotations

import numpy as np

from .errors import EmptySeries, SeriesTooShort
from .series import TimeSeries


def check_series(X, *, min_length: int = 1, name: str = "X") -> np.ndarray:
    """Coerce a single time series to a finite 1-D float array.

    Accepts :class:`TimeSeries`, pandas Series, lists and arrays of shape
    ``(n,)`` or ``(n, 1)``.
    """
    if isinstance(X, TimeSeries):
        x = X.values
    else:
        x = np.asarray(X, dtype=float)
    if x.ndim == 2 and x.shape[1] == 1:
        x = x[:, 0]
    if x.ndim != 1:
        raise ValueError(f"{name} must be a single series, got shape {x.shape}")
    if x.size == 0:
        raise EmptySeries(f"{name} is empty")
    if x.size < min_length:
        raise SeriesTooShort(f"{name} needs at least {min_length} values, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains NaN or infinite values")
    return x


def check_frame(X, names=None) -> tuple[np.ndarray, list[str]]:
    """2-D array plus column names (from a DataFrame, ``names`` or defaults)."""
    cols = getattr(X, "columns", None)
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("X contains NaN or infinite values")
    if names is not None:
        names = list(names)
    elif cols is not None:
        names = [str(c) for c in cols]
    else:
        names = [f"x{i}" for i in range(arr.shape[1])]
    if len(names) != arr.shape[1]:
        raise ValueError(f"{len(names)} names for {arr.shape[1]} columns")
    return arr, names
