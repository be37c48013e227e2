"""Approximate DPSS state preparation from a truncated central lobe.

The taper is described by its spectrum in the frame of the centered Fourier
transform ``C = pi F pi`` (``F`` the QFT, ``pi`` the half-register cyclic
shift).  In that frame the DPSS lobe sits around index ``N/2``.  Keeping only
``N'`` lobe amplitudes, packing them on the first ``N'`` basis states,
permuting them back to the centre and applying ``C`` rebuilds an approximate
taper.  Gate-level synthesis of these steps is not modelled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .eigen import dpss_taper
from .kernels import average_kernel
from .lattice import QpeGrid
from .tapers import Taper, dtft, from_vector, global_phase_align


def n_prime(eps: float) -> int:
    """Lobe parameter count ``2 ceil(175 (log(10/eps) + 1)^2) + 1``."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return 2 * math.ceil(175 * (math.log(10 / eps) + 1) ** 2) + 1


def _check_pow2(N: int):
    if N < 2 or N & (N - 1):
        raise ValueError(f"register dimension must be a power of two >= 2, got {N}")


def qft(vec) -> np.ndarray:
    """``|n> -> N^-1/2 sum_k exp(+2 pi i n k / N) |k>``."""
    return np.fft.ifft(vec, norm="ortho")


def inverse_qft(vec) -> np.ndarray:
    return np.fft.fft(vec, norm="ortho")


def half_shift(vec) -> np.ndarray:
    """The cyclic permutation ``|j> -> |j - N/2 mod N>``, realised as ``F Z F^-1``."""
    vec = np.asarray(vec, dtype=complex)
    N = vec.size
    _check_pow2(N)
    z = np.where(np.arange(N) % 2 == 0, 1.0, -1.0)
    return qft(z * inverse_qft(vec))


def centered_qft(vec) -> np.ndarray:
    """``F Z F Z F^-1``, which equals ``pi F pi``."""
    vec = np.asarray(vec, dtype=complex)
    _check_pow2(vec.size)
    z = np.where(np.arange(vec.size) % 2 == 0, 1.0, -1.0)
    return qft(z * qft(z * inverse_qft(vec)))


def centered_qft_direct(vec) -> np.ndarray:
    """Same map by index arithmetic: roll, transform, roll."""
    vec = np.asarray(vec, dtype=complex)
    h = vec.size // 2
    return np.roll(qft(np.roll(vec, -h)), -h)


def inverse_centered_qft(vec) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex)
    h = vec.size // 2
    return np.roll(inverse_qft(np.roll(vec, -h)), -h)


def centering_permutation(N: int, n_params: int) -> np.ndarray:
    """Target index of each basis state: a cyclic shift placing ``0..N'-1`` at the centre.

    The packed middle entry lands on ``N/2``, so for odd ``N'`` the block is
    ``N/2 - (N'-1)/2 .. N/2 + (N'-1)/2``.
    """
    _check_pow2(N)
    if not 1 <= n_params <= N:
        raise ValueError(f"need 1 <= N' <= N, got N'={n_params}, N={N}")
    offset = N // 2 - n_params // 2
    return (np.arange(N) + offset) % N


def apply_permutation(vec, perm) -> np.ndarray:
    out = np.zeros(len(perm), dtype=complex)
    out[perm] = vec
    return out


def invert_permutation(perm) -> np.ndarray:
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    return inv


@dataclass(frozen=True, eq=False)
class PrepPlan:
    """Classically computed lobe amplitudes plus where they belong."""

    N: int
    N_prime: int
    lobe_amps: np.ndarray
    center_offset: int
    kept_mass: float
    eps: float | None = None
    grid: QpeGrid | None = None


def centered_spectrum(taper: Taper) -> np.ndarray:
    """Taper amplitudes in the centered-QFT frame (frequency 0 at ``N/2``).

    Magnitudes equal the unitary DFT of the taper, ``|dtft(k/N)|``, up to the
    index reflection and shift of that frame.
    """
    return inverse_centered_qft(taper.amps)


def central_lobe_truncate(dpss: Taper, n_params: int, eps: float | None = None,
                          grid: QpeGrid | None = None) -> PrepPlan:
    """Keep ``n_params`` spectral bins around the lobe peak and renormalise."""
    N = dpss.N
    _check_pow2(N)
    if n_params > N:
        raise ValueError(f"N'={n_params} exceeds N={N}")
    if n_params < 1 or (n_params % 2 == 0 and n_params != N):
        raise ValueError(f"N' must be odd (or equal to N), got {n_params}")
    spec = centered_spectrum(dpss)
    peak = int(np.argmax(np.abs(spec)))
    start = peak - n_params // 2
    lobe = spec[(start + np.arange(n_params)) % N]
    kept = float(np.sum(np.abs(lobe) ** 2))
    return PrepPlan(
        N=N,
        N_prime=n_params,
        lobe_amps=lobe / math.sqrt(kept),
        center_offset=peak - N // 2,
        kept_mass=kept,
        eps=eps,
        grid=grid,
    )


def assemble(plan: PrepPlan) -> Taper:
    """Pack, centre and transform the lobe amplitudes into a taper."""
    packed = np.zeros(plan.N, dtype=complex)
    packed[: plan.N_prime] = plan.lobe_amps
    centred = apply_permutation(packed, centering_permutation(plan.N, plan.N_prime))
    centred = np.roll(centred, plan.center_offset)
    return from_vector(centered_qft(centred), "dpss_approx")


class PrepResult(NamedTuple):
    taper: Taper
    distance: float
    plan: PrepPlan
    clamped: bool


def prepare_approx_taper(grid: QpeGrid, eps: float, n_params: int | None = None,
                         dpss: Taper | None = None) -> PrepResult:
    """Run truncate, centre and centered QFT; report distance to the exact DPSS.

    ``n_params`` defaults to the lemma count ``n_prime(eps)``; counts beyond
    ``N`` are clamped to ``N`` (exact preparation) and flagged.
    """
    if dpss is None:
        dpss = dpss_taper(grid)
    wanted = n_prime(eps) if n_params is None else n_params
    clamped = wanted > grid.N
    plan = central_lobe_truncate(dpss, grid.N if clamped else wanted, eps, grid)
    approx = assemble(plan)
    approx = Taper(global_phase_align(dpss.amps, approx.amps), approx.label)
    distance = float(np.linalg.norm(approx.amps - dpss.amps))
    return PrepResult(approx, distance, plan, clamped)


def sidelobe_peak(taper: Taper, n_params: int, oversample: int = 32) -> float:
    """Largest ``|dtft|`` outside the kept band of ``n_params`` bins.

    The band is centred on the DTFT peak and extends half a bin past the
    outermost kept bin.
    """
    N = taper.N
    M = N * oversample
    f = np.arange(M) / M
    mag = np.abs(dtft(taper, f))
    f0 = f[int(np.argmax(mag))]
    dist = np.abs((f - f0 + 0.5) % 1.0 - 0.5)
    outside = dist >= (n_params / 2) / N
    return float(mag[outside].max()) if outside.any() else 0.0


def prep_report(grid: QpeGrid, eps: float, n_params: int | None = None) -> dict:
    """Summary used by the command line: distance and exact/approximate success."""
    dpss = dpss_taper(grid)
    res = prepare_approx_taper(grid, eps, n_params, dpss)
    kern = average_kernel(grid)
    return {
        "eps": eps,
        "N": grid.N,
        "N_prime": res.plan.N_prime,
        "clamped": res.clamped,
        "distance": res.distance,
        "kept_mass": res.plan.kept_mass,
        "success_exact": kern.quadratic_form(dpss),
        "success_approx": kern.quadratic_form(res.taper),
    }
