"""Phase-grid geometry for tapered phase estimation.

A grid is fixed by ``ell`` precision qubits and ``m`` boost qubits.  The
ancilla register has ``p = ell + m`` qubits, so estimates live on the
lattice ``k / N`` with ``N = 2**p``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def default_half_window(m: int) -> int:
    """Half-width ``K`` of the always-close block of estimates for ``m`` boost qubits."""
    if m < 2:
        return 0
    return 2 ** (m - 1) - 1


@dataclass(frozen=True)
class QpeGrid:
    ell: int
    m: int
    K: int
    p: int = field(init=False)
    N: int = field(init=False)
    delta: float = field(init=False)
    W: float = field(init=False)

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError(f"ell must be >= 1, got {self.ell}")
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")
        p = self.ell + self.m
        N = 2**p
        if self.K < 0 or 2 * self.K + 1 > N:
            raise ValueError(f"need 0 <= 2K+1 <= N, got K={self.K}, N={N}")
        W = (2 * self.K + 1) / (2 * N)
        if W >= 0.5:
            raise ValueError(f"bandwidth W=(2K+1)/2N must be < 1/2, got {W}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "delta", 2.0 ** (-self.ell - 1))
        object.__setattr__(self, "W", W)

    @property
    def half_bin(self) -> float:
        """Largest possible offset between a phase and its nearest estimate."""
        return 1.0 / (2 * self.N)

    def estimates(self) -> np.ndarray:
        return np.arange(self.N) / self.N


def new_grid(ell: int, m: int, K: int | None = None) -> QpeGrid:
    """Build a grid, using the default half-window unless ``K`` is given.

    >>> g = new_grid(3, 2)
    >>> g.N, g.K, g.delta, g.W
    (32, 1, 0.0625, 0.046875)
    """
    if K is None:
        K = default_half_window(m)
    return QpeGrid(ell=ell, m=m, K=K)


def check_phase(theta: float) -> float:
    theta = float(theta)
    if not (0.0 <= theta < 1.0) or math.isnan(theta):
        raise ValueError(f"phase must lie in [0, 1), got {theta}")
    return theta


def delta_of(grid: QpeGrid, theta: float) -> tuple[int, float]:
    """Nearest grid estimate ``k_star`` and the signed offset ``theta - k_star/N``.

    Distances are circular, so phases just below 1 map to estimate 0.  A phase
    exactly midway between two estimates goes to the smaller index, giving a
    positive offset of ``1/2N``.
    """
    theta = check_phase(theta)
    N = grid.N
    x = theta * N
    k = math.ceil(x - 0.5)
    offset = (x - k) / N
    return k % N, offset


def circular_distance(a, b):
    """Distance between phases on the unit circle (period 1)."""
    d = np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float), 1.0)
    return np.minimum(d, 1.0 - d)
