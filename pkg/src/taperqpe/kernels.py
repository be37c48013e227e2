"""Dense concentration operators whose top eigenvectors are optimal tapers.

All four kernels are Toeplitz in ``m - n``; the removable singularities of the
Dirichlet and sinc ratios on the diagonal are filled with their limits.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import QpeGrid


@dataclass(frozen=True, eq=False)
class Kernel:
    mat: np.ndarray
    kind: str
    params: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.mat.shape[0]

    def quadratic_form(self, vec) -> float:
        vec = getattr(vec, "amps", vec)
        return float(np.real(np.vdot(vec, self.mat @ vec)))

    def tofile(self, path):
        """Row-major little-endian complex128 (interleaved re/im) dump for debugging."""
        np.ascontiguousarray(self.mat, dtype="<c16").tofile(path)


def _lags(N: int) -> np.ndarray:
    n = np.arange(N)
    return np.subtract.outer(n, n)


def dirichlet(x, N: int, K: int) -> np.ndarray:
    """``sin(pi x (2K+1)/N) / sin(pi x / N)`` with the value 2K+1 at multiples of N."""
    x = np.asarray(x, dtype=float)
    den = np.sin(np.pi * x / N)
    singular = np.mod(x, N) == 0
    out = np.empty_like(x)
    safe = ~singular
    out[safe] = np.sin(np.pi * x[safe] * (2 * K + 1) / N) / den[safe]
    # at x = jN the ratio tends to (-1)^(2Kj) (2K+1) = 2K+1
    out[singular] = 2 * K + 1
    return out


def _sinc_band(x: np.ndarray, W: float) -> np.ndarray:
    """``sin(2 pi W x) / (pi x)`` with limit ``2W`` at 0."""
    return 2 * W * np.sinc(2 * W * x)


def _check_offset(N: int, offset: float):
    if abs(offset) > 1 / (2 * N) * (1 + 1e-12):
        raise ValueError(f"|Delta| must be <= 1/2N, got {offset}")


def ideal_kernel(grid: QpeGrid, offset: float) -> Kernel:
    """Kernel whose quadratic form is the windowed success at a known offset.

    ``mat[m, n] = exp(2 pi i offset (n - m)) D(m - n) / N``.  It is the
    periodic band-limiting projector conjugated by a modulation, so its
    spectrum is exactly ``2K+1`` ones and zeros elsewhere.
    """
    N, K = grid.N, grid.K
    _check_offset(N, offset)
    d = _lags(N)
    mat = np.exp(-2j * np.pi * offset * d) * dirichlet(d, N, K) / N
    return Kernel(mat, "ideal", {"Delta": offset, "K": K})


def average_kernel(grid: QpeGrid) -> Kernel:
    """Offset-averaged kernel ``sin(pi (m-n)(2K+1)/N) / (pi (m-n))``.

    Equals the classical band-limiting kernel with ``W = (2K+1)/2N``; its top
    eigenvector is the DPSS taper.
    """
    mat = _sinc_band(_lags(grid.N).astype(float), grid.W)
    return Kernel(mat, "average", {"K": grid.K, "W": grid.W})


def classical_kernel(N: int, W: float) -> Kernel:
    """Finite section of the band-limiting operator, ``sin(2 pi W (l-n)) / (pi (l-n))``."""
    if not 0 < W < 0.5:
        raise ValueError(f"need 0 < W < 1/2, got {W}")
    mat = _sinc_band(_lags(N).astype(float), W)
    return Kernel(mat, "classical", {"W": W})


def worstcase_form(grid: QpeGrid) -> Kernel:
    """Real part of the ideal kernel at offset ``1/2N``.

    For real tapers its quadratic form is the windowed success at either
    half-bin offset; in general it is the mean of the two.
    """
    N, K = grid.N, grid.K
    d = _lags(N).astype(float)
    mat = np.cos(np.pi * d / N) * dirichlet(d, N, K) / N
    return Kernel(mat, "worstcase", {"K": K})
