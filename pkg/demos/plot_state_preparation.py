"""
Preparing the DPSS taper from its central lobe
==============================================

Most of the DPSS spectrum sits in a narrow lobe.  Keeping ``N'`` lobe
amplitudes and rebuilding the taper with a centered Fourier transform gives a
close approximation; the error shrinks as ``N'`` grows.
"""

from taperqpe import new_grid
from taperqpe.eigen import dpss_taper
from taperqpe.kernels import average_kernel
from taperqpe.prep import prepare_approx_taper, sidelobe_peak

grid = new_grid(3, 3)
exact = dpss_taper(grid)
kern = average_kernel(grid)
print(f"N={grid.N}, K={grid.K}, exact average success {kern.quadratic_form(exact):.10f}")

############################################################
# Distance, side lobes and success for a few lobe widths

for n_params in (5, 7, 13, 21, grid.N):
    res = prepare_approx_taper(grid, 0.1, n_params, exact)
    print(
        f"N'={n_params:3d}  distance {res.distance:.2e}  "
        f"side lobe {sidelobe_peak(res.taper, n_params):.2e}  "
        f"success {kern.quadratic_form(res.taper):.10f}"
    )
