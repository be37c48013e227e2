"""Ancilla taper states and their discrete-time Fourier transform."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .lattice import QpeGrid

NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Taper:
    """Unit-norm amplitude vector loaded on the ancilla register."""

    amps: np.ndarray
    label: str = "custom"

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex).ravel()
        norm = np.linalg.norm(amps)
        if amps.size == 0 or abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"taper must have unit norm, got {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def N(self) -> int:
        return self.amps.size

    def is_real(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.amps.imag)) <= tol)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "N": self.N,
            "re": self.amps.real.tolist(),
            "im": self.amps.imag.tolist(),
        }

    @classmethod
    def from_json(cls, obj) -> "Taper":
        if isinstance(obj, str):
            obj = json.loads(obj)
        amps = np.asarray(obj["re"], float) + 1j * np.asarray(obj["im"], float)
        if amps.size != obj["N"]:
            raise ValueError("length field does not match amplitude arrays")
        return cls(amps, obj.get("label", "custom"))


def from_vector(vec, label: str = "custom") -> Taper:
    """Normalise an arbitrary nonzero vector into a taper."""
    vec = np.asarray(vec, dtype=complex).ravel()
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise ValueError("cannot normalise the zero vector")
    return Taper(vec / norm, label)


def tophat(grid: QpeGrid) -> Taper:
    N = grid.N
    return Taper(np.full(N, 1 / np.sqrt(N)), "tophat")


def sine(grid: QpeGrid) -> Taper:
    # sqrt(N/2) is only the large-N normalisation; renormalise exactly
    n = np.arange(grid.N)
    return from_vector(np.sin(np.pi * n / grid.N) / np.sqrt(grid.N / 2), "sine")


def cosine(grid: QpeGrid) -> Taper:
    n = np.arange(grid.N)
    return from_vector(np.cos(np.pi * n / grid.N) / np.sqrt(grid.N / 2), "cosine")


def _check_offset(N: int, offset: float):
    if abs(offset) > 1 / (2 * N) * (1 + 1e-12):
        raise ValueError(f"offset must satisfy |Delta| <= 1/2N = {1 / (2 * N)}, got {offset}")


def phi_shift(grid: QpeGrid, offset: float) -> Taper:
    """Tophat modulated to put a phase at ``k/N + offset`` back on the grid.

    With ``K = 0`` this taper returns the nearest estimate with certainty
    when the true offset equals ``offset``.  The modulation is
    ``exp(-2 pi i offset n)``: it cancels the phase ramp the controlled
    cascade adds at that offset.
    """
    _check_offset(grid.N, offset)
    n = np.arange(grid.N)
    amps = np.exp(-2j * np.pi * offset * n) / np.sqrt(grid.N)
    return Taper(amps, f"phi_shift({offset:+.6g})")


def modulate(taper: Taper, offset: float) -> Taper:
    """Multiply entry ``n`` by ``exp(-2 pi i offset n)``; norm is unchanged.

    This carries eigenvectors of the zero-offset ideal kernel to those of
    the kernel at ``offset``, and shifts the DTFT by ``-offset``.
    """
    n = np.arange(taper.N)
    return Taper(taper.amps * np.exp(-2j * np.pi * offset * n), taper.label)


def dtft(taper: Taper, f):
    """Evaluate ``(1/sqrt N) sum_n amps[n] exp(+2 pi i n f)``.

    ``f`` may be a scalar or an array; the result has the same shape.
    """
    f = np.asarray(f, dtype=float)
    n = np.arange(taper.N)
    phase = np.exp(2j * np.pi * np.multiply.outer(f, n))
    out = phase @ taper.amps / np.sqrt(taper.N)
    return out[()] if out.ndim == 0 else out


def grid_spectrum(taper: Taper) -> np.ndarray:
    """DTFT sampled on the estimate lattice: entry k is ``dtft(k/N)``.

    This is the taper after a forward QFT, computed with an FFT.
    """
    return np.fft.ifft(taper.amps, norm="ortho")


def global_phase_align(ref: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Rotate ``vec`` by a global phase to best match ``ref``."""
    ov = np.vdot(vec, ref)
    if ov == 0:
        return vec
    return vec * (ov / abs(ov))


def ray_distance(a: Taper, b: Taper) -> float:
    """Euclidean distance between two tapers after global-phase alignment."""
    return float(np.linalg.norm(global_phase_align(a.amps, b.amps) - a.amps))


def write_csv(tapers, path_or_file, oversample: int = 8):
    """Write ``|amps|`` and ``|dtft|`` samples of one or more tapers.

    Rows with ``kind=amp`` are indexed by ``n``; rows with ``kind=dtft`` by
    frequency on an ``oversample``-times finer lattice over ``[-1/2, 1/2)``.
    """
    tapers = list(tapers)
    N = tapers[0].N
    if any(t.N != N for t in tapers):
        raise ValueError("all tapers in one CSV must share N")
    freqs = np.arange(-N * oversample // 2, N * oversample // 2) / (N * oversample)
    spectra = [np.abs(dtft(t, freqs)) for t in tapers]

    own = isinstance(path_or_file, str)
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "x"] + [t.label for t in tapers])
        for n in range(N):
            w.writerow(["amp", n] + [f"{abs(t.amps[n]):.17g}" for t in tapers])
        for i, f in enumerate(freqs):
            w.writerow(["dtft", f"{f:.17g}"] + [f"{s[i]:.17g}" for s in spectra])
    finally:
        if own:
            fh.close()
