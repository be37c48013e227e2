"""Hermitian eigen-solutions for concentration kernels.

Two independent routes to the top eigenpair are provided: a dense LAPACK
decomposition and a shifted block power iteration.  The kernels of interest
have ``~2K+1`` eigenvalues clustered just below 1, which stalls plain power
iteration; iterating a block wider than the cluster and extracting Ritz pairs
sidesteps that.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .kernels import average_kernel
from .lattice import QpeGrid
from .tapers import Taper

log = logging.getLogger(__name__)

DENSE_MAX_N = 4096
RESIDUAL_TOL = 1e-8


class ConvergenceError(RuntimeError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True, eq=False)
class Eigenpair:
    value: float
    vector: np.ndarray
    residual: float


def _matrix(kernel) -> np.ndarray:
    mat = getattr(kernel, "mat", kernel)
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"kernel must be square, got shape {mat.shape}")
    return mat


def fix_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate so the largest-magnitude entry is real and positive."""
    vec = np.asarray(vec)
    i = int(np.argmax(np.abs(vec)))
    pivot = vec[i]
    if pivot == 0:
        return vec
    vec = vec * (abs(pivot) / pivot)
    if np.isrealobj(vec) or np.max(np.abs(vec.imag)) == 0:
        return np.real(vec)
    return vec


def _residual(mat, value, vec) -> float:
    return float(np.linalg.norm(mat @ vec - value * vec))


def full_spectrum(kernel) -> list[Eigenpair]:
    """All eigenpairs, eigenvalues descending."""
    mat = _matrix(kernel)
    if mat.shape[0] > DENSE_MAX_N:
        raise ValueError(f"dense spectrum limited to N <= {DENSE_MAX_N}, got {mat.shape[0]}")
    values, vectors = np.linalg.eigh(mat)
    out = []
    for j in range(values.size - 1, -1, -1):
        v = fix_phase(vectors[:, j])
        out.append(Eigenpair(float(values[j]), v, _residual(mat, values[j], v)))
    return out


def _dense_top(mat) -> Eigenpair:
    values, vectors = np.linalg.eigh(mat)
    v = fix_phase(vectors[:, -1])
    return Eigenpair(float(values[-1]), v, _residual(mat, values[-1], v))


def power_top(
    mat,
    tol: float = 1e-12,
    max_iter: int = 100_000,
    block: int | None = None,
    seed: int = 0,
) -> Eigenpair:
    """Top eigenpair by shifted block power iteration with Rayleigh-Ritz.

    The matrix is shifted by a Gershgorin lower bound so the spectrum is
    nonnegative and the largest eigenvalue dominates.  Stops when the top Ritz
    value changes by less than ``tol`` and the residual meets ``RESIDUAL_TOL``.
    """
    mat = np.asarray(mat)
    N = mat.shape[0]
    radii = np.sum(np.abs(mat), axis=1) - np.abs(np.diag(mat))
    lower = float(np.min(np.real(np.diag(mat)) - radii))
    shift = max(0.0, -lower)
    if block is None:
        trace = float(np.real(np.trace(mat)))
        block = max(8, int(np.ceil(max(trace, 0.0))) + 8)
    block = min(block, N)

    rng = np.random.default_rng(seed)
    dtype = np.result_type(mat.dtype, float)
    Q = rng.standard_normal((N, block)).astype(dtype)
    Q, _ = np.linalg.qr(Q)
    prev = np.inf
    residual = np.inf
    for it in range(1, max_iter + 1):
        Z = mat @ Q + shift * Q
        Q, _ = np.linalg.qr(Z)
        H = Q.conj().T @ (mat @ Q)
        H = (H + H.conj().T) / 2
        theta, S = np.linalg.eigh(H)
        value = float(theta[-1])
        vec = Q @ S[:, -1]
        vec /= np.linalg.norm(vec)
        residual = _residual(mat, value, vec)
        if abs(value - prev) < tol and residual <= RESIDUAL_TOL:
            log.debug("block power iteration converged in %d steps", it)
            v = fix_phase(vec)
            return Eigenpair(value, v, _residual(mat, value, v))
        prev = value
        # rotate the basis to Ritz vectors so later QR keeps them ordered
        Q = Q @ S[:, ::-1]
    raise ConvergenceError(f"no convergence after {max_iter} iterations", residual)


def max_eigenpair(kernel, method: str = "auto", **kwargs) -> Eigenpair:
    """Dominant eigenpair of a Hermitian kernel.

    ``method`` is ``"dense"``, ``"power"`` or ``"auto"`` (dense up to
    ``DENSE_MAX_N``).  The returned vector has its largest entry real and
    positive; raises :class:`ConvergenceError` if the residual contract fails.
    """
    mat = _matrix(kernel)
    if method == "auto":
        method = "dense" if mat.shape[0] <= DENSE_MAX_N else "power"
    if method == "dense":
        pair = _dense_top(mat)
    elif method == "power":
        pair = power_top(mat, **kwargs)
    else:
        raise ValueError(f"unknown method {method!r}")
    if pair.residual > RESIDUAL_TOL:
        raise ConvergenceError("eigenpair residual above contract", pair.residual)
    return pair


def dpss_pair(grid: QpeGrid, method: str = "auto") -> Eigenpair:
    return max_eigenpair(average_kernel(grid), method=method)


def dpss_taper(grid: QpeGrid, method: str = "auto") -> Taper:
    """Average-case optimal taper: the top eigenvector of the averaged kernel."""
    pair = dpss_pair(grid, method)
    vec = pair.vector / np.linalg.norm(pair.vector)
    return Taper(vec, "dpss")
