"""Discrete Fourier spectra.

The transform is an exact mixed-radix Cooley-Tukey FFT. Each level splits
off the smallest prime factor; prime lengths above a small cutoff go
through Bluestein's chirp-z reformulation, which computes the exact
length-n DFT via power-of-two convolutions.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .errors import SeriesTooShort
from .series import DAY, as_series

_DIRECT_MAX = 16


@dataclass(frozen=True)
class Spectrum:
    frequencies: np.ndarray = field(repr=False)  # cycles per day
    magnitudes: np.ndarray = field(repr=False)
    dc_zeroed: bool = False
    label: str = ""

    def __len__(self):
        return self.magnitudes.size


def _smallest_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


@lru_cache(maxsize=256)
def _twiddles(n: int) -> np.ndarray:
    # exponent reduced mod n before scaling keeps the angles accurate
    return np.exp(-2j * np.pi * (np.arange(n) % n) / n)


@lru_cache(maxsize=64)
def _dft_matrix(n: int) -> np.ndarray:
    k = np.arange(n)
    return np.exp(-2j * np.pi * (np.outer(k, k) % n) / n)


def _bluestein(x: np.ndarray) -> np.ndarray:
    n = x.size
    k = np.arange(n)
    # k^2 mod 2n keeps the chirp exponent small
    chirp = np.exp(-1j * np.pi * ((k * k) % (2 * n)) / n)
    m = 1 << (2 * n - 1).bit_length()
    a = np.zeros(m, dtype=complex)
    a[:n] = x * chirp
    b = np.zeros(m, dtype=complex)
    b[:n] = np.conj(chirp)
    b[m - n + 1 :] = np.conj(chirp[1:][::-1])
    conv = _ifft(_fft(a) * _fft(b))
    return chirp * conv[:n]


def _fft(x: np.ndarray) -> np.ndarray:
    n = x.size
    if n <= _DIRECT_MAX:
        return _dft_matrix(n) @ x if n > 1 else x.copy()
    p = _smallest_factor(n)
    if p == n:
        return _bluestein(x)
    m = n // p
    # sub-transforms of the p decimated sequences, shape (p, m)
    sub = np.stack([_fft(x[r::p]) for r in range(p)])
    tw = _twiddles(n)
    r = np.arange(p)[:, None]
    k = np.arange(m)[None, :]
    sub = sub * tw[(r * k) % n]
    # X[k + m*q] = sum_r W_p^{rq} sub[r, k]
    return (_dft_matrix(p) @ sub).reshape(n)


def _ifft(x: np.ndarray) -> np.ndarray:
    return np.conj(_fft(np.conj(x))) / x.size


def fft(x) -> np.ndarray:
    """Full two-sided DFT, X_k = sum_t x_t exp(-2 pi i k t / n)."""
    x = np.asarray(x, dtype=complex).ravel()
    if x.size == 0:
        raise SeriesTooShort("cannot transform an empty sequence")
    return _fft(x)


def naive_dft(x) -> np.ndarray:
    """O(n^2) reference DFT."""
    x = np.asarray(x, dtype=complex).ravel()
    n = x.size
    out = np.empty(n, dtype=complex)
    t = np.arange(n)
    for k in range(n):
        out[k] = np.sum(x * np.exp(-2j * np.pi * ((k * t) % n) / n))
    return out


def dft_magnitude(s) -> Spectrum:
    """One-sided magnitude spectrum (bins 0..n//2), frequencies in 1/day."""
    s = as_series(s)
    n = len(s)
    if n < 2:
        raise SeriesTooShort(f"spectrum needs at least 2 samples, got {n}")
    X = fft(s.values)
    half = n // 2 + 1
    step_days = s.step / DAY if isinstance(s.step, dt.timedelta) else float(s.step)
    freqs = np.arange(half) / (n * step_days)
    return Spectrum(freqs, np.abs(X[:half]), dc_zeroed=False, label=s.label)


def zero_dc(sp: Spectrum) -> Spectrum:
    mags = sp.magnitudes.copy()
    mags[0] = 0.0
    return replace(sp, magnitudes=mags, dc_zeroed=True)
