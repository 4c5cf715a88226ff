"""
sweep command: cascade fit across a range of delta
"""
import logging

from src.numerics import estimate_cascade
from utils.errors import EmptyWindowError, InsufficientDataError, create_success_response
from utils.output import write_csv_atomic

from .common import build_grid, build_profile, build_spec, fit_window, output_path, run_ordered

logger = logging.getLogger(__name__)

SWEEP_HEADER = ('delta', 'xi_lo', 'xi_hi', 'slope', 'intercept', 'r2')


def fit_delta(config, grid, delta: float) -> tuple:
    """One sweep row; a delta whose window is empty or too narrow gives empty fit columns"""
    spec = build_spec(config, delta)
    try:
        window = fit_window(config, delta)
        estimate = estimate_cascade(build_profile(spec, grid, config.branch), window)
    except (EmptyWindowError, InsufficientDataError) as error:
        logger.warning(f"delta={delta:g}: {error.message}")
        return delta, None, None, None, None, None
    lo, hi = estimate.window
    return delta, lo, hi, estimate.slope, estimate.intercept, estimate.r_squared


def run_sweep(config) -> dict:
    """
    Fit the cascade slope for every delta in DELTAS and write sweep.csv

    Returns:
        dict: Success payload with the rows and the written path
    """
    grid = build_grid(config)
    deltas = list(config.deltas)
    logger.info(f"sweep over {len(deltas)} deltas on {grid!r}")
    rows = run_ordered(lambda delta: fit_delta(config, grid, delta), deltas, config.workers)

    path = write_csv_atomic(output_path(config, 'sweep.csv'), SWEEP_HEADER, rows)
    return create_success_response({
        'rows': [dict(zip(SWEEP_HEADER, row)) for row in rows],
        'files': [path],
    })
