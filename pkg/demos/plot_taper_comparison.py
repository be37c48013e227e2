"""
Comparing tapers across the offset range
========================================

A phase that sits between two estimates is the hard case for phase
estimation.  Here the tophat, sine and DPSS tapers are swept over the offset
``Delta`` and their success probabilities are printed side by side.
"""

import numpy as np

from taperqpe import average_success, delta_sweep, dpss_taper, new_grid, sine, tophat
from taperqpe.eigen import dpss_pair

############################################################
# A register of 2^(3+2) = 32 states, with a window of 2K+1 = 3 estimates

grid = new_grid(3, 2)
tapers = [tophat(grid), sine(grid), dpss_taper(grid)]
print(f"N={grid.N}, K={grid.K}, delta={grid.delta}")

############################################################
# Windowed success over [0, 1/2N]

records = delta_sweep(tapers, grid, 6, measures="window")
print("   N*Delta   " + "  ".join(f"{t.label:>10}" for t in tapers))
for r in records:
    print(f"{r.Delta * grid.N:10.3f}   " + "  ".join(f"{r.values[t.label]:10.6f}" for t in tapers))

############################################################
# Averaged over the offset, DPSS wins and its average is the kernel eigenvalue

lam = dpss_pair(grid).value
for t in tapers:
    print(f"{t.label:>8}: average success {average_success(t, grid):.8f}")
print(f"top eigenvalue  {lam:.8f}")
print(f"worst-case floor 1 - 4(1 - lambda) = {1 - 4 * (1 - lam):.8f}")

############################################################
# The amplitudes themselves

np.set_printoptions(precision=3, suppress=True)
print(dpss_taper(grid).amps.real)
