"""
Coherent estimation of a superposition
======================================

With a superposition of eigenvectors as input, every branch is estimated
independently and no measurement of the system is needed.  The circuit is
simulated exactly and the per-branch success is compared with the single
phase analysis.
"""

import numpy as np

from taperqpe import SpectralInput, coherent_success, dpss_taper, new_grid, run_tqpe, success_probability

grid = new_grid(3, 3)
taper = dpss_taper(grid)
rng = np.random.default_rng(0)

############################################################
# Four eigenphases with random amplitudes

c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
spectral = SpectralInput(rng.uniform(0, 1, 4), c / np.linalg.norm(c))
state = run_tqpe(taper, spectral, grid)
print(f"norm after the circuit: {state.norm:.15f}")

############################################################
# Branch by branch

for theta, weight in zip(spectral.thetas, np.abs(spectral.coeffs) ** 2):
    print(f"theta={theta:.5f}  weight {weight:.3f}  success {success_probability(taper, theta, grid):.10f}")
print(f"coherent success {coherent_success(state, spectral, grid):.10f}")
