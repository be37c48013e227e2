"""Cross-module invariant suite behind ``taperqpe verify``."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import bounds, kernels, spectra, tapers
from .eigen import dpss_pair, full_spectrum, max_eigenpair
from .lattice import new_grid
from .prep import centered_qft, centered_qft_direct, prepare_approx_taper
from .simulator import SpectralInput, run_tqpe

log = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def _named_tapers(grid):
    hb = grid.half_bin
    return [
        tapers.tophat(grid),
        tapers.sine(grid),
        tapers.cosine(grid),
        tapers.phi_shift(grid, hb),
        tapers.phi_shift(grid, -hb),
    ]


def check_quadratic_form(grid, rng, trials):
    worst = 0.0
    for _ in range(trials):
        t = tapers.from_vector(rng.standard_normal(grid.N) + 1j * rng.standard_normal(grid.N))
        off = rng.uniform(-grid.half_bin, grid.half_bin)
        direct = spectra.window_probability(t, off, grid.K)
        form = kernels.ideal_kernel(grid, off).quadratic_form(t)
        worst = max(worst, abs(direct - form))
    return worst <= 1e-10, f"max |direct - form| = {worst:.2e}"


def check_parseval(grid, rng, trials):
    worst = 0.0
    for t in _named_tapers(grid):
        for theta in rng.uniform(0, 1, trials):
            s = np.sum(np.abs(tapers.dtft(t, theta - np.arange(grid.N) / grid.N)) ** 2)
            worst = max(worst, abs(s - 1))
    return worst <= 1e-10, f"max |sum - 1| = {worst:.2e}"


def check_average_optimality(grid):
    pair = dpss_pair(grid)
    dpss = tapers.Taper(pair.vector, "dpss")
    best = spectra.average_success(dpss, grid)
    gap = min(best - spectra.average_success(t, grid) for t in _named_tapers(grid))
    eig_err = abs(best - pair.value)
    ok = gap >= -1e-9 and eig_err <= 1e-6
    return ok, f"min margin {gap:.2e}, |avg - lambda| = {eig_err:.2e}"


def check_worst_case_factor(grid):
    pair = dpss_pair(grid)
    dpss = tapers.Taper(pair.vector, "dpss")
    low = spectra.sweep_minimum(dpss, grid, 201)
    floor = 1 - 4 * (1 - pair.value)
    return low >= floor, f"sweep min {low:.12f} vs floor {floor:.12f}"


def check_kernel_spectra(grid):
    lo, hi = np.inf, -np.inf
    for k in (
        kernels.ideal_kernel(grid, grid.half_bin / 3),
        kernels.average_kernel(grid),
        kernels.worstcase_form(grid),
    ):
        herm = np.max(np.abs(k.mat - k.mat.conj().T))
        if herm > 1e-12:
            return False, f"{k.kind} not Hermitian ({herm:.1e})"
        vals = [p.value for p in full_spectrum(k)]
        lo, hi = min(lo, min(vals)), max(hi, max(vals))
    ok = lo >= -1e-10 and hi <= 1 + 1e-10
    return ok, f"eigenvalues within [{lo:.2e}, {hi:.12f}]"


def check_karnik(grid):
    lam = max_eigenpair(kernels.average_kernel(grid)).value
    bound = float(bounds.karnik_lower_bound(grid.N, grid.K))
    return lam >= bound - 1e-12, f"lambda {lam:.15f} >= bound {bound:.15f}"


def check_simulator(grid, rng, trials):
    worst = 0.0
    dpss = tapers.Taper(dpss_pair(grid).vector, "dpss")
    for theta in rng.uniform(0, 1, trials):
        col = run_tqpe(dpss, SpectralInput.single(theta), grid).amps[:, 0]
        ref = tapers.dtft(dpss, theta - np.arange(grid.N) / grid.N)
        worst = max(worst, float(np.max(np.abs(col - ref))))
    return worst <= 1e-10, f"max amplitude error {worst:.2e}"


def check_prep(grid):
    v = np.random.default_rng(1).standard_normal(grid.N) + 0j
    err = np.max(np.abs(centered_qft(v) - centered_qft_direct(v)))
    res = prepare_approx_taper(grid, 0.1, n_params=2 * grid.K + 1)
    ok = err <= 1e-12 and abs(np.linalg.norm(res.taper.amps) - 1) <= 1e-12
    return ok, f"C-QFT route mismatch {err:.1e}, distance {res.distance:.2e}"


def check_goldens():
    got = (
        int(bounds.required_m_nonasymptotic(0.1)),
        int(bounds.required_m_asymptotic(1e-6)),
        int(bounds.cleve_m(0.1)),
        int(bounds.practical_K(0.1)),
    )
    return got == (14, 4, 3, 8), f"got {got}"


def run_checks(quick: bool = False, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    trials = 10 if quick else 50
    grids = [new_grid(3, m) for m in ((1, 2, 3) if quick else (1, 2, 3, 4))]
    plan = []
    for g in grids:
        tag = f"ell={g.ell},m={g.m},K={g.K}"
        plan += [
            (f"quadratic form [{tag}]", lambda g=g: check_quadratic_form(g, rng, trials)),
            (f"parseval [{tag}]", lambda g=g: check_parseval(g, rng, trials)),
            (f"average optimality [{tag}]", lambda g=g: check_average_optimality(g)),
            (f"worst-case factor 4 [{tag}]", lambda g=g: check_worst_case_factor(g)),
            (f"kernel spectra [{tag}]", lambda g=g: check_kernel_spectra(g)),
            (f"eigenvalue bound [{tag}]", lambda g=g: check_karnik(g)),
            (f"simulator oracle [{tag}]", lambda g=g: check_simulator(g, rng, trials)),
            (f"prep pipeline [{tag}]", lambda g=g: check_prep(g)),
        ]
    plan.append(("bound goldens", check_goldens))

    results = []
    for name, fn in plan:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        log.info("%s %s: %s", "PASS" if ok else "FAIL", name, detail)
        results.append(CheckResult(name, bool(ok), detail))
    return results
