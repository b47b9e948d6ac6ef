"""Deterministic DSP primitives shared by the ingest and feature stages.

Everything here is a pure function of its inputs (the twiddle/chirp caches
are read-only), so all operations are safe to call from multiple threads.
All arithmetic is 64-bit floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConstantSignal, InvalidWindow, UpsampleNotSupported, WindowTooLarge

__all__ = [
    "Signal",
    "Spectrum",
    "moving_average",
    "min_max_normalize",
    "resample",
    "dft_naive",
    "fft",
    "ifft",
    "hilbert_envelope",
]


@dataclass(frozen=True)
class Signal:
    """A uniformly sampled real-valued signal.

    samples : 1-D float64 array, non-empty, all finite
    rate_hz : sampling rate, > 0
    """

    samples: np.ndarray
    rate_hz: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("signal must be a non-empty 1-D array")
        if not np.isfinite(samples).all():
            raise ValueError("signal contains NaN or Inf")
        if not (self.rate_hz > 0):
            raise ValueError(f"rate_hz must be positive, got {self.rate_hz}")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "rate_hz", float(self.rate_hz))

    def __len__(self):
        return self.samples.size

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.rate_hz


@dataclass(frozen=True)
class Spectrum:
    """Full two-sided DFT of a signal: bins[k] for k = 0..N-1."""

    bins: np.ndarray
    rate_hz: float

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=np.complex128)
        if bins.ndim != 1 or bins.size == 0:
            raise ValueError("spectrum must be a non-empty 1-D array")
        object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "rate_hz", float(self.rate_hz))

    def __len__(self):
        return self.bins.size


def moving_average(x: Signal, window: int) -> Signal:
    """Sliding mean with the given window; output length is len(x) - window + 1.

    Sums are taken over deviations from the first sample so that a constant
    signal averages to exactly that constant.
    """
    if window < 1:
        raise InvalidWindow(f"window must be >= 1, got {window}")
    n = len(x)
    if window > n:
        raise WindowTooLarge(f"window {window} exceeds signal length {n}")
    anchor = x.samples[0]
    dev = x.samples - anchor
    csum = np.concatenate(([0.0], np.cumsum(dev)))
    out = anchor + (csum[window:] - csum[:-window]) / window
    return Signal(out, x.rate_hz)


def min_max_normalize(x: Signal) -> tuple[Signal, tuple[float, float]]:
    """Affinely map the signal onto [0, 1]; returns (signal, (min, max)).

    The returned scale parameters let a caller undo or re-apply the map.
    Raises ConstantSignal when max == min.
    """
    lo = float(np.min(x.samples))
    hi = float(np.max(x.samples))
    if hi == lo:
        raise ConstantSignal(f"signal is constant at {lo}; cannot scale to [0, 1]")
    out = (x.samples - lo) / (hi - lo)
    return Signal(out, x.rate_hz), (lo, hi)


def resample(x: Signal, target_hz: float, prefilter: bool = False) -> Signal:
    """Downsample by linear interpolation at uniformly spaced target instants.

    Output length is floor(len(x) * target_hz / rate_hz). No anti-alias
    filtering is applied unless `prefilter` is set, which smooths first with
    a moving average matched to the decimation ratio.
    """
    if not (target_hz > 0):
        raise ValueError(f"target_hz must be positive, got {target_hz}")
    if target_hz > x.rate_hz:
        raise UpsampleNotSupported(
            f"target rate {target_hz} Hz exceeds source rate {x.rate_hz} Hz"
        )
    if target_hz == x.rate_hz:
        return Signal(x.samples.copy(), x.rate_hz)
    src = x
    if prefilter:
        width = max(1, int(round(x.rate_hz / target_hz)))
        if width > 1 and width <= len(x):
            src = moving_average(x, width)
    n = len(src)
    m = int(math.floor(len(x) * target_hz / x.rate_hz))
    if prefilter:
        m = min(m, n)
    positions = np.arange(m) * (src.rate_hz / target_hz)
    out = np.interp(positions, np.arange(n, dtype=np.float64), src.samples)
    return Signal(out, target_hz)


# ---------------------------------------------------------------------------
# Fourier transforms
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _dft_matrix(n: int) -> np.ndarray:
    """The n x n matrix W[k, j] = exp(-2*pi*i*k*j / n), read-only."""
    k = np.arange(n)
    w = np.exp((-2j * np.pi / n) * np.outer(k, k))
    w.setflags(write=False)
    return w


def dft_naive(x: Signal) -> Spectrum:
    """Direct quadratic evaluation of X_k = sum_n x_n e^(-i 2 pi k n / N).

    O(N^2); exists as the independent reference the fast transform is
    checked against. The exponential table is cached per length.
    """
    bins = _dft_matrix(len(x)) @ x.samples.astype(np.complex128)
    return Spectrum(bins, x.rate_hz)


@lru_cache(maxsize=32)
def _bit_reversal(n: int) -> np.ndarray:
    levels = n.bit_length() - 1
    idx = np.zeros(n, dtype=np.intp)
    for i in range(1, n):
        idx[i] = (idx[i >> 1] >> 1) | ((i & 1) << (levels - 1))
    idx.setflags(write=False)
    return idx


@lru_cache(maxsize=32)
def _stage_twiddles(size: int) -> np.ndarray:
    w = np.exp(-2j * np.pi * np.arange(size // 2) / size)
    w.setflags(write=False)
    return w


def _fft_pow2(a: np.ndarray) -> np.ndarray:
    """Iterative radix-2 Cooley-Tukey transform; len(a) must be a power of two."""
    n = a.shape[0]
    out = np.asarray(a, dtype=np.complex128)[_bit_reversal(n)]
    size = 2
    while size <= n:
        half = size // 2
        w = _stage_twiddles(size)
        blocks = out.reshape(-1, size)
        u = blocks[:, :half].copy()
        t = blocks[:, half:] * w
        blocks[:, :half] = u + t
        blocks[:, half:] = u - t
        size *= 2
    return out


@lru_cache(maxsize=8)
def _bluestein_tables(n: int) -> tuple[np.ndarray, np.ndarray, int]:
    # Chirp phases are reduced mod 2n before exp() so the angle never leaves
    # [0, 2*pi); without this, sin/cos of ~n^2 radians loses precision.
    k = np.arange(n, dtype=np.int64)
    chirp = np.exp((-1j * np.pi / n) * ((k * k) % (2 * n)))
    m = 1 << (2 * n - 1).bit_length()
    kernel = np.zeros(m, dtype=np.complex128)
    kernel[:n] = chirp.conj()
    kernel[m - n + 1:] = chirp[1:][::-1].conj()
    kernel_f = _fft_pow2(kernel)
    chirp.setflags(write=False)
    kernel_f.setflags(write=False)
    return chirp, kernel_f, m


def _dft_any(a: np.ndarray) -> np.ndarray:
    """Exact N-point DFT of a complex array for arbitrary N in O(N log N).

    Powers of two go straight to radix-2; other lengths use the Bluestein
    chirp-z reduction to a power-of-two circular convolution, which equals
    the exact N-point DFT (no zero-padding of the transform itself).
    """
    n = a.shape[0]
    if n == 1:
        return np.asarray(a, dtype=np.complex128).copy()
    if n & (n - 1) == 0:
        return _fft_pow2(a)
    chirp, kernel_f, m = _bluestein_tables(n)
    buf = np.zeros(m, dtype=np.complex128)
    buf[:n] = np.asarray(a, dtype=np.complex128) * chirp
    prod = _fft_pow2(buf) * kernel_f
    conv = np.conj(_fft_pow2(np.conj(prod))) / m
    return conv[:n] * chirp


def _idft_any(bins: np.ndarray) -> np.ndarray:
    return np.conj(_dft_any(np.conj(bins))) / bins.shape[0]


def fft(x: Signal) -> Spectrum:
    """Fast N-point DFT for arbitrary N; agrees with dft_naive to ~1e-12."""
    return Spectrum(_dft_any(x.samples), x.rate_hz)


def ifft(s: Spectrum) -> np.ndarray:
    """Inverse DFT; returns the complex time-domain array."""
    return _idft_any(s.bins)


def hilbert_envelope(x: Signal) -> Signal:
    """Magnitude of the analytic signal, computed in the frequency domain.

    Negative-frequency bins are zeroed, positive bins doubled, DC (and the
    Nyquist bin for even N) kept as-is; the magnitude of the inverse
    transform is the instantaneous-amplitude envelope.
    """
    n = len(x)
    if n < 4:
        raise ValueError(f"hilbert envelope needs at least 4 samples, got {n}")
    bins = _dft_any(x.samples)
    gain = np.zeros(n)
    gain[0] = 1.0
    if n % 2 == 0:
        gain[n // 2] = 1.0
        gain[1:n // 2] = 2.0
    else:
        gain[1:(n + 1) // 2] = 2.0
    analytic = _idft_any(bins * gain)
    return Signal(np.abs(analytic), x.rate_hz)
