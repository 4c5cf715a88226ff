from .grid_spectral import (
    NormKind, dft_backward, dft_forward, discrete_norm, positive_half, spectral_derivative,
    to_dirichlet, to_periodic
)
from .forcing import (
    coefficient_asymptote, coefficient_from_log_gamma, eval_f, eval_Q, rhs_field,
    series_coefficients, series_spectrum
)
from .profiles import cardano_profiles, cardano_roots, power_root_profile, profile_residual
from .cascade_fit import (
    default_window, estimate_cascade, fit_power_law, profile_spectrum, weighted_deviation
)
from .stationary_solver import (
    ellipticity_report, fd_laplacian_apply, linear_coefficient, solve_linearized,
    stationary_fixed_point
)
from .dynamics import (
    RotatingForcing, SplitStepIntegrator, StaticForcing, band_limited_perturbation, energy, evolve, fit_envelope,
    forcing_for, renormalized_energy, rotating_energy, rotation_rate, step_strang
)

__all__ = [
    'NormKind', 'dft_backward', 'dft_forward', 'discrete_norm', 'positive_half',
    'spectral_derivative', 'to_dirichlet', 'to_periodic',
    'coefficient_asymptote', 'coefficient_from_log_gamma', 'eval_f', 'eval_Q', 'rhs_field',
    'series_coefficients', 'series_spectrum',
    'cardano_profiles', 'cardano_roots', 'power_root_profile', 'profile_residual',
    'default_window', 'estimate_cascade', 'fit_power_law', 'profile_spectrum', 'weighted_deviation',
    'ellipticity_report', 'fd_laplacian_apply', 'linear_coefficient', 'solve_linearized',
    'stationary_fixed_point',
    'RotatingForcing', 'SplitStepIntegrator', 'StaticForcing', 'band_limited_perturbation', 'energy', 'evolve',
    'fit_envelope', 'forcing_for', 'renormalized_energy', 'rotating_energy', 'rotation_rate', 'step_strang',
]
