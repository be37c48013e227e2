"""Exact statevector simulation of the tapered phase-estimation circuit.

The unitary is simulated in its eigenbasis, so the joint state is an
``N x d`` array: ancilla index ``k`` by eigenvector index ``r``.  Because the
controlled powers of a diagonal unitary act on each eigen-column separately,
no entanglement beyond that block structure can arise.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .lattice import QpeGrid, check_phase, circular_distance
from .tapers import Taper

MAX_QUBITS = 20


@dataclass(frozen=True, eq=False)
class SpectralInput:
    """System state as eigenphases ``thetas`` with amplitudes ``coeffs``."""

    thetas: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        thetas = np.array([check_phase(t) for t in np.ravel(self.thetas)])
        coeffs = np.array(self.coeffs, dtype=complex).ravel()
        if thetas.size != coeffs.size or thetas.size == 0:
            raise ValueError("need one coefficient per phase")
        if len(np.unique(thetas)) != thetas.size:
            raise ValueError("eigenphases must be distinct")
        norm = np.sum(np.abs(coeffs) ** 2)
        if abs(norm - 1) > 1e-12:
            raise ValueError(f"coefficients must have unit norm, got {norm}")
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def d(self) -> int:
        return self.thetas.size

    @classmethod
    def single(cls, theta: float) -> "SpectralInput":
        return cls(np.array([theta]), np.array([1.0]))

    @classmethod
    def uniform(cls, thetas) -> "SpectralInput":
        thetas = np.ravel(thetas)
        return cls(thetas, np.full(thetas.size, 1 / np.sqrt(thetas.size)))


@dataclass(frozen=True, eq=False)
class JointState:
    amps: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def controlled_powers(amps: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Apply the controlled-``U^(2^j)`` cascade for each eigen-column.

    Qubit ``j`` of the ancilla index carries weight ``2^j``; when it is set the
    eigen-column picks up ``exp(2 pi i theta 2^j)``.
    """
    N = amps.shape[0]
    p = N.bit_length() - 1
    n = np.arange(N)
    out = np.array(amps, dtype=complex)
    for j in range(p):
        bit = ((n >> j) & 1).astype(bool)
        # reduce theta * 2^j mod 1 before exponentiating to limit rounding
        out[bit, :] *= np.exp(2j * np.pi * np.mod(thetas * 2.0**j, 1.0))
    return out


def inverse_qft(amps: np.ndarray) -> np.ndarray:
    """``|n> -> N^-1/2 sum_k exp(-2 pi i n k / N) |k>`` along axis 0."""
    return np.fft.fft(amps, axis=0, norm="ortho")


def run_tqpe(taper: Taper, spectral: SpectralInput, grid: QpeGrid | None = None,
             max_qubits: int = MAX_QUBITS) -> JointState:
    """Load the taper, apply the controlled cascade, then the inverse QFT."""
    N = taper.N
    if grid is not None and grid.N != N:
        raise ValueError(f"taper length {N} does not match grid N={grid.N}")
    if N & (N - 1):
        raise ValueError(f"ancilla dimension must be a power of two, got {N}")
    if N.bit_length() - 1 > max_qubits:
        raise ValueError(f"{N.bit_length() - 1} ancilla qubits exceeds cap {max_qubits}")
    state = np.outer(taper.amps, spectral.coeffs)
    state = controlled_powers(state, spectral.thetas)
    return JointState(inverse_qft(state))


def readout_distribution(state: JointState) -> np.ndarray:
    """Marginal probability of each ancilla outcome ``k``."""
    return np.sum(np.abs(state.amps) ** 2, axis=1)


def coherent_success(state: JointState, spectral: SpectralInput, grid: QpeGrid) -> float:
    """Mass on estimates within ``delta`` of each branch's own eigenphase."""
    est = np.arange(grid.N) / grid.N
    total = 0.0
    for r, theta in enumerate(spectral.thetas):
        if spectral.coeffs[r] == 0:
            continue
        close = circular_distance(theta, est) <= grid.delta * (1 + 1e-12)
        total += float(np.sum(np.abs(state.amps[close, r]) ** 2))
    return total


def sample_shots(state: JointState, shots: int, seed: int | None = None) -> np.ndarray:
    """Counts per outcome for ``shots`` measurements of the ancilla register."""
    rng = np.random.default_rng(seed)
    probs = readout_distribution(state)
    return rng.multinomial(shots, probs / probs.sum())


def distribution_json(state: JointState, spectral: SpectralInput, grid: QpeGrid | None = None) -> str:
    dist = readout_distribution(state)
    payload = {
        "N": int(dist.size),
        "thetas": spectral.thetas.tolist(),
        "distribution": dist.tolist(),
    }
    if grid is not None:
        payload["coherent_success"] = coherent_success(state, spectral, grid)
    return json.dumps(payload)
