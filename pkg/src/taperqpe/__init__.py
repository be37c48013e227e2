"""Optimal tapers for coherent quantum phase estimation."""
from .bounds import (
    BoundReport,
    cleve_m,
    karnik_lower_bound,
    practical_K,
    required_m_asymptotic,
    required_m_nonasymptotic,
    required_m_zhu,
    slepian_gap,
    zhu_R,
)
from .eigen import ConvergenceError, Eigenpair, dpss_taper, full_spectrum, max_eigenpair
from .kernels import Kernel, average_kernel, classical_kernel, ideal_kernel, worstcase_form
from .lattice import QpeGrid, delta_of, new_grid
from .prep import (
    PrepPlan,
    central_lobe_truncate,
    centered_qft,
    centering_permutation,
    n_prime,
    prepare_approx_taper,
)
from .simulator import JointState, SpectralInput, coherent_success, readout_distribution, run_tqpe
from .spectra import (
    SweepRecord,
    average_success,
    convolution_identity_check,
    delta_sweep,
    success_probability,
    two_nearest_probability,
    window_probability,
    worst_case_success,
)
from .tapers import Taper, cosine, dtft, modulate, phi_shift, sine, tophat

__version__ = "0.1.0"
