"""Pearson and Spearman correlation with two-sided Student-t p-values."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstantSeries, EmptySeries, LengthMismatch, SeriesTooShort
from .series import TimeSeries, as_series

SPEARMAN_RELIABLE_N = 500

_EPS = 1e-16
_TINY = 1e-300


@dataclass(frozen=True)
class CorrelationResult:
    pearson_r: float
    pearson_p: float
    spearman_rho: float
    spearman_p: float
    n: int

    @property
    def small_sample(self) -> bool:
        """Spearman's t-approximated p-value is unreliable below 500 points."""
        return self.n < SPEARMAN_RELIABLE_N

    def as_dict(self) -> dict:
        return {
            "pearson_r": self.pearson_r,
            "pearson_p": self.pearson_p,
            "spearman_rho": self.spearman_rho,
            "spearman_p": self.spearman_p,
            "n": self.n,
            "small_sample": self.small_sample,
        }


# -- special functions -------------------------------------------------------


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, 10_000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b).

    Evaluated by continued fraction on whichever of ``x`` / ``1-x`` converges
    fast, using the symmetry I_x(a, b) = 1 - I_{1-x}(b, a).
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_sf2(t: float, df: float) -> float:
    """Two-sided tail probability P(|T| >= |t|) for Student-t with ``df`` dof."""
    if df <= 0:
        raise ValueError(f"degrees of freedom must be positive, got {df}")
    if math.isinf(t):
        return 0.0
    t2 = t * t
    return betainc(0.5 * df, 0.5, df / (df + t2))


def _p_from_r(r: float, n: int) -> float:
    if abs(r) >= 1.0:
        return 0.0
    df = n - 2
    t = r * math.sqrt(df / ((1.0 - r) * (1.0 + r)))
    p = student_t_sf2(t, df)
    if p < 1e-300:
        return 0.0
    return min(max(p, 0.0), 1.0)


# -- coefficients ------------------------------------------------------------


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x, y = as_series(x), as_series(y)
    if len(x) != len(y):
        raise LengthMismatch(f"lengths differ: {len(x)} vs {len(y)}")
    if len(x) < 3:
        raise SeriesTooShort(f"correlation needs at least 3 points, got {len(x)}")
    for s in (x, y):
        if np.all(s.values == s.values[0]):
            raise ConstantSeries(f"series {s.label!r} is constant")
    return x.values, y.values


def _pearson_r(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    dy = y - y.mean()
    r = float(dx @ dy / math.sqrt((dx @ dx) * (dy @ dy)))
    return min(1.0, max(-1.0, r))


def pearson(x, y) -> tuple[float, float]:
    """Pearson's r and its two-sided p-value (t-test with n-2 dof)."""
    xv, yv = _pair(x, y)
    r = _pearson_r(xv, yv)
    return r, _p_from_r(r, xv.size)


def rank(x) -> TimeSeries:
    """1-based ranks; ties share the average of the ranks they span."""
    s = as_series(x)
    v = s.values
    if v.size == 0:
        raise EmptySeries(f"series {s.label!r} is empty")
    order = np.argsort(v, kind="mergesort")
    sorted_v = v[order]
    # boundaries of tie groups in sorted order
    starts = np.flatnonzero(np.concatenate(([True], sorted_v[1:] != sorted_v[:-1])))
    ends = np.concatenate((starts[1:], [v.size]))
    avg = (starts + ends + 1) / 2.0  # mean of 1-based ranks starts+1..ends
    ranks = np.empty(v.size)
    ranks[order] = np.repeat(avg, ends - starts)
    return s.derive(ranks)


def spearman(x, y) -> tuple[float, float]:
    """Spearman's rho (Pearson on ranks) and its t-approximated p-value."""
    xv, yv = _pair(x, y)
    rho = _pearson_r(rank(xv).values, rank(yv).values)
    return rho, _p_from_r(rho, xv.size)


def correlate(x, y) -> CorrelationResult:
    xv, yv = _pair(x, y)
    r, p = pearson(xv, yv)
    rho, sp = spearman(xv, yv)
    return CorrelationResult(r, p, rho, sp, int(xv.size))
