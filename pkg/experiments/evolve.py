"""
evolve command: perturbation of a stationary or rotating solution along the forced dynamics
"""
import logging
import math

from src.models import EvolutionConfig, ReferenceKind, Regime, SolverConfig
from src.numerics import band_limited_perturbation, evolve, fit_envelope, stationary_fixed_point
from utils.errors import BlowUpError, InsufficientDataError, create_success_response
from utils.output import format_value, write_csv_atomic

from .common import build_grid, build_profile, build_spec, fit_window, output_path

logger = logging.getLogger(__name__)

TRAJECTORY_HEADER = ('t', 'l2_v', 'energy', 'renorm_energy', 'mass')


def reference_state(config, spec, grid, epsilon: float):
    """
    Reference solution and its kind

    The corrected stationary solution when it can be solved for; the algebraic
    profile itself (rotating for P = 1) with epsilon = 0, in the focusing case
    or for the Cardano branches other than U1.
    """
    profile = build_profile(spec, grid, config.branch)
    rotating = spec.p is Regime.ONE and config.branch != 1
    if epsilon == 0 or spec.focusing or rotating:
        kind = ReferenceKind.ROTATING if spec.p is Regime.ONE else ReferenceKind.STATIONARY
        return profile.values, kind

    solver = SolverConfig(epsilon=epsilon, max_iterations=config.max_iterations, tolerance=config.tolerance)
    result = stationary_fixed_point(profile, solver)
    if not result.converged:
        logger.warning(f"reference solve stopped after {result.iterations} iterations without converging")
    return result.u_eps, ReferenceKind.STATIONARY


def _summary_line(envelope, seed, status: str) -> str:
    values = {
        'envelope_amplitude': None if envelope is None else envelope.amplitude,
        'envelope_rate': None if envelope is None else envelope.rate,
        'r2': None if envelope is None else envelope.r_squared,
        'seed': seed,
        'status': status,
    }
    return ';'.join(f'{key}={format_value(value)}' for key, value in values.items())


def _envelope(record):
    try:
        return fit_envelope(record.times, record.l2_v)
    except InsufficientDataError as error:
        logger.info(f"no envelope fitted: {error.message}")
        return None


def run_evolve(config) -> dict:
    """
    Evolve reference + v0 and write trajectory.csv

    ||v0||_L2 = PERTURBATION * eps^(1/2), band-limited to the fit window
    (PERTURBATION itself when eps = 0).
    A blow-up writes the partial trajectory flagged status=blow_up and re-raises.

    Returns:
        dict: Success payload with the envelope fit and the written path
    """
    spec = build_spec(config)
    grid = build_grid(config)
    epsilon = config.epsilon_values[0]
    reference, kind = reference_state(config, spec, grid, epsilon)
    evolution = EvolutionConfig(dt=config.dt, t_final=config.t_final, nu=config.nu,
                                record_every=config.record_every, reference=kind, k=config.branch)

    seed = config.seed if config.seed is not None else 0
    size = config.perturbation * math.sqrt(epsilon) if epsilon > 0 else config.perturbation
    v0 = band_limited_perturbation(grid, size, fit_window(config)[1], seed)
    logger.info(f"evolve: eps={epsilon:g}, |v0|={size:.3e}, seed={seed}, reference={kind.value}")

    path = output_path(config, 'trajectory.csv')
    try:
        record = evolve(reference + v0, evolution, spec, epsilon, reference=reference)
    except BlowUpError as error:
        partial = error.record
        if partial is not None and len(partial):
            write_csv_atomic(path, TRAJECTORY_HEADER, partial.rows(),
                             comments=[_summary_line(_envelope(partial), seed, 'blow_up')])
        raise

    envelope = _envelope(record)
    write_csv_atomic(path, TRAJECTORY_HEADER, record.rows(), comments=[_summary_line(envelope, seed, 'ok')])

    return create_success_response({
        'epsilon': epsilon,
        'seed': seed,
        'samples': len(record),
        'envelope': None if envelope is None else envelope.to_dict(),
        'files': [path],
    })
