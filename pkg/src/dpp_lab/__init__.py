"""dpp-lab: stationary determinantal point processes at desk scale.

Parametric kernels with existence checks, exact spectral sampling on
rectangular windows, intensity / pair-correlation estimation with
asymptotic variances, and Monte-Carlo verification of the limit theorems
that hold for these processes.
"""

from .kernels import (
    KernelModel,
    ExistenceResult,
    gaussian_kernel,
    bessel_kernel,
    poisson_kernel,
    tabulated_kernel,
    load_tabulated_csv,
    eval_kernel,
    fourier_transform,
    check_existence,
    pcf,
    cumulant_density,
    l2_norm_sq,
    check_heinrich_bounds,
)
from .spectral import (
    SpectralApprox,
    build_operator,
    power_trace,
    ik_quadrature,
    factorial_cumulant_cube,
    brillinger_trend,
)
from .cumulants import (
    StirlingTable,
    stirling_tables,
    fact_cumulants_from_cumulants,
    cumulants_from_fact_cumulants,
    fact_cumulants_from_fact_moments,
    enumerate_partitions,
    empirical_cumulants,
)
from .sampler import (
    Window,
    PointPattern,
    sample_dpp,
    sample_poisson,
    save_pattern,
    load_pattern,
)
from .estimators import (
    SmoothingKernel,
    PcfEstimate,
    intensity_hat,
    sigma2_intensity,
    translation_correction,
    pcf_hat,
    pcf_profile,
    bias_bound,
    tau2_pointwise,
    ise,
    tau2_ise,
    var_linear_statistic,
    var_pair_statistic,
    cov_pair_linear,
)
from .mc import (
    ExperimentConfig,
    McReport,
    run_intensity_clt,
    run_cumulant_decay,
    run_pcf_clt,
    run_ise_clt,
)

__version__ = "0.1.0"
