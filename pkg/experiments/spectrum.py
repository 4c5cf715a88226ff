"""
spectrum command: Fourier magnitude of an algebraic profile and its cascade fit
"""
import logging

import numpy as np

from src.models import Branch
from src.numerics import estimate_cascade, series_spectrum
from utils.errors import create_success_response
from utils.output import write_csv_atomic, write_loglog_svg

from .common import build_grid, build_profile, build_spec, fit_window, output_path

logger = logging.getLogger(__name__)

SPECTRUM_HEADER = ('xi', 'abs_uhat_dft', 'abs_uhat_series', 'fitted_slope_window_lo',
                   'fitted_slope_window_hi', 'slope', 'r2')


def run_spectrum(config) -> dict:
    """
    Compute the profile spectrum, fit its slope and write spectrum.csv

    The semi-analytic series column is filled for power-root profiles on
    frequencies up to the window's upper edge and left empty elsewhere.

    Returns:
        dict: Success payload with the fit and the written paths
    """
    spec = build_spec(config)
    grid = build_grid(config)
    profile = build_profile(spec, grid, config.branch)
    window = fit_window(config)

    logger.info(f"spectrum: {profile!r}, {grid!r}, window=({window[0]:g}, {window[1]:g})")
    estimate = estimate_cascade(profile, window)

    series = np.full(estimate.xi.shape, np.nan)
    if profile.branch is Branch.POWER_ROOT:
        covered = estimate.xi <= window[1]
        series[covered] = np.abs(series_spectrum(spec, estimate.xi[covered]))

    lo, hi = estimate.window
    rows = (
        (xi, magnitude, None if np.isnan(exact) else exact, lo, hi, estimate.slope, estimate.r_squared)
        for xi, magnitude, exact in zip(estimate.xi, estimate.magnitude, series)
    )
    files = [write_csv_atomic(output_path(config, 'spectrum.csv'), SPECTRUM_HEADER, rows)]

    if config.emit_svg:
        fitted = np.exp(estimate.intercept) * estimate.xi ** estimate.slope
        curves = [('DFT', estimate.xi, estimate.magnitude),
                  (f'fit slope {estimate.slope:.3f}', estimate.xi[estimate.in_window()],
                   fitted[estimate.in_window()])]
        if profile.branch is Branch.POWER_ROOT:
            covered = ~np.isnan(series)
            curves.append(('series', estimate.xi[covered], series[covered]))
        files.append(write_loglog_svg(output_path(config, 'spectrum.svg'), curves,
                                      title=f'{profile.label}, delta={spec.delta:g}', window=window))

    logger.info(f"spectrum slope {estimate.slope:.6f} (expected {-spec.cascade_exponent:.6f}), "
                f"r2={estimate.r_squared:.8f}")
    return create_success_response({
        'profile': profile.label,
        'expected_slope': -spec.cascade_exponent,
        'fit': estimate.to_dict(),
        'files': files,
    })
