"""Success-probability functionals of a taper.

Everything here is computed by direct summation of the taper's DTFT, so the
kernel quadratic forms in :mod:`taperqpe.kernels` act as independent checks.
"""
from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .lattice import QpeGrid, check_phase, circular_distance
from .tapers import Taper, dtft

MEASURES = ("nearest", "window", "two_nearest")

# slack on the closed delta-interval so exactly representable boundary phases count
_BOUNDARY_SLACK = 1e-12


@dataclass(frozen=True)
class SweepRecord:
    Delta: float
    values: dict = field(default_factory=dict)


def _check_offset(N: int, offset: float):
    if abs(offset) > 1 / (2 * N) * (1 + 1e-12):
        raise ValueError(f"|Delta| must be <= 1/2N, got {offset}")


def window_probability(taper: Taper, offset: float, K: int) -> float:
    """Probability of the ``2K+1`` estimates nearest a phase at ``offset`` from the grid."""
    N = taper.N
    _check_offset(N, offset)
    k = np.arange(-K, K + 1)
    return float(np.sum(np.abs(dtft(taper, offset - k / N)) ** 2))


def nearest_probability(taper: Taper, offset: float) -> float:
    return window_probability(taper, offset, 0)


def two_nearest_probability(taper: Taper, offset: float) -> float:
    """Mass on the two estimates that straddle the phase.

    At zero offset the second estimate is taken on the negative side.
    """
    N = taper.N
    _check_offset(N, offset)
    side = -1.0 if offset < 0 else 1.0
    f = np.array([offset, offset - side / N])
    return float(np.sum(np.abs(dtft(taper, f)) ** 2))


def success_probability(taper: Taper, theta: float, grid: QpeGrid) -> float:
    """Exact probability of reading an estimate within ``grid.delta`` of ``theta``."""
    theta = check_phase(theta)
    if taper.N != grid.N:
        raise ValueError(f"taper length {taper.N} does not match grid N={grid.N}")
    k = np.arange(grid.N)
    close = circular_distance(theta, k / grid.N) <= grid.delta * (1 + _BOUNDARY_SLACK)
    return float(np.sum(np.abs(dtft(taper, theta - k[close] / grid.N)) ** 2))


def _measure(taper, offset, K, name):
    if name == "nearest":
        return nearest_probability(taper, offset)
    if name == "window":
        return window_probability(taper, offset, K)
    if name == "two_nearest":
        return two_nearest_probability(taper, offset)
    raise ValueError(f"unknown measure {name!r}; choose from {MEASURES}")


def sweep_offsets(grid: QpeGrid, num_points: int, full_range: bool = False) -> np.ndarray:
    if num_points < 2:
        raise ValueError("a sweep needs at least two points")
    hb = grid.half_bin
    return np.linspace(-hb if full_range else 0.0, hb, num_points)


def delta_sweep(
    tapers,
    grid: QpeGrid,
    num_points: int,
    full_range: bool = False,
    measures=MEASURES,
    threads: int = 1,
) -> list[SweepRecord]:
    """Evaluate success measures of several tapers on a uniform offset grid.

    The sweep covers ``[0, 1/2N]``, or ``[-1/2N, 1/2N]`` with ``full_range``.
    With a single measure (given as a string) the record keys are the taper
    labels; otherwise they are ``"label:measure"``.
    """
    tapers = list(tapers)
    single = isinstance(measures, str)
    names = (measures,) if single else tuple(measures)
    offsets = sweep_offsets(grid, num_points, full_range)

    def row(offset):
        values = {}
        for t in tapers:
            for name in names:
                key = t.label if single else f"{t.label}:{name}"
                values[key] = _measure(t, float(offset), grid.K, name)
        return SweepRecord(float(offset), values)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(row, offsets))
    return [row(o) for o in offsets]


def write_sweep_csv(records, path_or_file):
    """``Delta,label1,label2,...`` with 17 significant digits."""
    keys = list(records[0].values)
    own = isinstance(path_or_file, str)
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["Delta"] + keys)
        for r in records:
            w.writerow([f"{r.Delta:.17g}"] + [f"{r.values[k]:.17g}" for k in keys])
    finally:
        if own:
            fh.close()


def average_success(taper: Taper, grid: QpeGrid, quadrature_points: int = 64) -> float:
    """Windowed success averaged over a uniform offset in ``[-1/2N, 1/2N]``.

    Gauss-Legendre quadrature; the exact value is the average-kernel quadratic form.
    """
    if quadrature_points < 8:
        raise ValueError("use at least 8 quadrature points")
    nodes, weights = np.polynomial.legendre.leggauss(quadrature_points)
    hb = grid.half_bin
    k = np.arange(-grid.K, grid.K + 1)
    freqs = np.add.outer(nodes * hb, -k / grid.N)
    probs = np.sum(np.abs(dtft(taper, freqs)) ** 2, axis=1)
    # density N on an interval of half-width hb: N * hb = 1/2
    return float(0.5 * np.dot(weights, probs))


def worst_case_success(taper: Taper, grid: QpeGrid) -> float:
    """Windowed success at the half-bin offsets, whichever is lower."""
    hb = grid.half_bin
    return min(window_probability(taper, hb, grid.K), window_probability(taper, -hb, grid.K))


def sweep_minimum(taper: Taper, grid: QpeGrid, num_points: int = 201, measure: str = "window") -> float:
    """Lowest value of a measure over a full-range offset sweep."""
    offsets = sweep_offsets(grid, num_points, full_range=True)
    return min(_measure(taper, float(o), grid.K, measure) for o in offsets)


def convolution_identity_check(taper: Taper, theta: float, k: int) -> float:
    """Compare a simulated readout amplitude with ``|dtft(theta - k/N)|``.

    Returns ``|sim| - |dtft|`` for index ``k``; it should vanish to rounding.
    """
    from .simulator import SpectralInput, run_tqpe

    state = run_tqpe(taper, SpectralInput.single(theta))
    sim = abs(state.amps[k, 0])
    return float(sim - abs(dtft(taper, theta - k / taper.N)))
