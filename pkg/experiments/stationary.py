"""
stationary command: epsilon sweep of the corrected stationary solution
"""
import logging
import math

import numpy as np

from src.models import SolverConfig
from src.numerics import ellipticity_report, profile_spectrum, stationary_fixed_point, weighted_deviation
from utils.errors import DivergenceError, LostEllipticityError, create_success_response
from utils.output import write_csv_atomic

from .common import build_grid, build_profile, build_spec, fit_window, output_path, run_ordered

logger = logging.getLogger(__name__)

STATIONARY_HEADER = ('epsilon', 'converged', 'iterations', 'residual', 'v_max', 'weighted_deviation')
DEVIATION_HEADER = ('epsilon', 'xi', 'abs_uhat_eps', 'abs_uhat_0', 'weighted_difference')


def _failed_row(epsilon: float, iterations: int, elliptic: bool, min_coefficient: float = None) -> dict:
    return {
        'epsilon': epsilon, 'converged': False, 'iterations': iterations, 'residual': math.nan,
        'v_max': math.nan, 'weighted_deviation': math.nan, 'elliptic': elliptic,
        'min_coefficient': min_coefficient, 'deviation': [],
    }


def solve_row(profile, solver: SolverConfig, reference_spectrum, exponent: float, window: tuple) -> dict:
    """One epsilon of the sweep; divergence and lost ellipticity are recorded, not raised"""
    try:
        result = stationary_fixed_point(profile, solver)
    except DivergenceError as error:
        logger.warning(f"eps={solver.epsilon:g}: {error.message}")
        return _failed_row(solver.epsilon, error.iterations, elliptic=True)
    except LostEllipticityError as error:
        logger.warning(f"eps={solver.epsilon:g}: {error.message}")
        return _failed_row(solver.epsilon, 0, elliptic=False, min_coefficient=error.min_coefficient)

    spectrum = profile_spectrum(result.u_eps, profile.far_field)
    xi = np.abs(spectrum.grid.frequencies)
    inside = (spectrum.grid.frequencies > 0) & (xi >= window[0]) & (xi <= window[1])
    uhat_eps = np.abs(spectrum.values[inside])
    uhat_0 = np.abs(reference_spectrum.values[inside])
    difference = xi[inside] ** exponent * np.abs(spectrum.values[inside] - reference_spectrum.values[inside])

    row = result.to_dict()
    row['elliptic'] = True
    row['weighted_deviation'] = weighted_deviation(spectrum, reference_spectrum, exponent, window)
    row['deviation'] = list(zip(xi[inside], uhat_eps, uhat_0, difference))
    return row


def run_stationary(config) -> dict:
    """
    Solve for every configured epsilon and write stationary.csv and deviation.csv

    Rows follow the order of the epsilon list whatever the completion order.

    Returns:
        dict: Success payload with per-epsilon summaries and the written paths
    """
    spec = build_spec(config)
    grid = build_grid(config)
    profile = build_profile(spec, grid, config.branch)
    window = fit_window(config)
    exponent = spec.cascade_exponent
    reference_spectrum = profile_spectrum(profile.values, profile.far_field)
    base = SolverConfig(max_iterations=config.max_iterations, tolerance=config.tolerance)

    epsilons = config.epsilon_values
    logger.info(f"stationary sweep over {len(epsilons)} epsilons for {profile!r}")
    rows = run_ordered(
        lambda epsilon: solve_row(profile, base.with_epsilon(epsilon), reference_spectrum, exponent, window),
        epsilons,
        config.workers,
    )

    summary = [(row['epsilon'], row['converged'], row['iterations'], row['residual'], row['v_max'],
                row['weighted_deviation']) for row in rows]
    deviation = [(row['epsilon'],) + entry for row in rows for entry in row['deviation']]
    files = [
        write_csv_atomic(output_path(config, 'stationary.csv'), STATIONARY_HEADER, summary),
        write_csv_atomic(output_path(config, 'deviation.csv'), DEVIATION_HEADER, deviation),
    ]

    converged = sum(1 for row in rows if row['converged'])
    logger.info(f"stationary sweep: {converged}/{len(rows)} converged")
    return create_success_response({
        'profile': profile.label,
        'ellipticity': ellipticity_report(profile),
        'rows': [{key: value for key, value in row.items() if key != 'deviation'} for row in rows],
        'files': files,
    })
