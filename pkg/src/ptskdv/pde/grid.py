"""Periodic grid and Fourier differentiation."""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft as sfft

WORKERS_ENV = "PTSKDV_WORKERS"


def fft_workers() -> int:
    """Worker count for scipy.fft from PTSKDV_WORKERS (0 or unset = all cores)."""
    raw = os.environ.get(WORKERS_ENV, "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"{WORKERS_ENV} must be >= 0, got {n}")
    return n if n > 0 else (os.cpu_count() or 1)


@dataclass(frozen=True)
class Grid:
    n_points: int
    length: float

    def __post_init__(self):
        n = self.n_points
        if not isinstance(n, (int, np.integer)) or n < 4 or n & (n - 1):
            raise ValueError(f"n_points must be a power of two >= 4, got {n!r}")
        if not self.length > 0:
            raise ValueError(f"length must be positive, got {self.length!r}")

    @cached_property
    def x(self) -> np.ndarray:
        return np.arange(self.n_points) * (self.length / self.n_points) - self.length / 2

    @property
    def dx(self) -> float:
        return self.length / self.n_points

    @cached_property
    def k(self) -> np.ndarray:
        """Angular wavenumbers in FFT order; the Nyquist mode is kept at +n/2."""
        j = sfft.fftfreq(self.n_points, d=1.0 / self.n_points)
        j[self.n_points // 2] = self.n_points // 2
        return j * (2 * np.pi / self.length)

    @cached_property
    def dealias(self) -> np.ndarray:
        """2/3-rule mask: keep |j| < n/3."""
        j = np.abs(sfft.fftfreq(self.n_points, d=1.0 / self.n_points))
        return j < self.n_points / 3

    def symbol(self, order: int) -> np.ndarray:
        s = (1j * self.k) ** order
        if order % 2:
            s[self.n_points // 2] = 0  # odd derivatives of the Nyquist mode are not real-representable
        return s

    def integrate(self, f) -> complex:
        """Rectangle rule along the last axis (exact for resolved trigonometric polynomials)."""
        return np.sum(f, axis=-1) * self.dx


def spectral_dx(f: np.ndarray, grid: Grid, order: int = 1) -> np.ndarray:
    """(ik)**order applied along the last axis."""
    if order == 0:
        return np.asarray(f, dtype=complex)
    w = fft_workers()
    return sfft.ifft(sfft.fft(f, axis=-1, workers=w) * grid.symbol(order), axis=-1, workers=w)


def project(f: np.ndarray, grid: Grid) -> np.ndarray:
    """Zero the upper third of the spectrum."""
    w = fft_workers()
    return sfft.ifft(sfft.fft(f, axis=-1, workers=w) * grid.dealias, axis=-1, workers=w)


def tail_fraction(f: np.ndarray, grid: Grid) -> float:
    """Share of spectral energy in |j| > n/4, the top quarter of the retained band and beyond."""
    F = np.abs(sfft.fft(f, axis=-1)) ** 2
    j = np.abs(sfft.fftfreq(grid.n_points, d=1.0 / grid.n_points))
    total = float(np.sum(F))
    return float(np.sum(F[..., j > grid.n_points / 4]) / total) if total > 0 else 0.0
