"""
fit command: power-law fit of a spectrum stored as a two-column CSV
"""
import csv
import logging

import numpy as np

from src.numerics import fit_power_law
from utils.errors import OutputError, ValidationError, create_success_response
from utils.output import write_csv_atomic

from .common import fit_window, output_path

logger = logging.getLogger(__name__)

FIT_HEADER = ('xi_lo', 'xi_hi', 'slope', 'intercept', 'r2', 'points')


def read_spectrum_csv(path: str):
    """
    Read (xi, magnitude) pairs from the first two columns

    A non-numeric first row is taken as a header; lines starting with # are skipped.

    Raises:
        OutputError: If the file cannot be read
        ValidationError: If a data row is malformed
    """
    xi, magnitude = [], []
    try:
        with open(path, newline='') as stream:
            for number, row in enumerate(csv.reader(stream), start=1):
                if not row or row[0].lstrip().startswith('#'):
                    continue
                try:
                    pair = float(row[0]), float(row[1])
                except (ValueError, IndexError):
                    if number == 1:
                        continue
                    raise ValidationError(f"{path}:{number}: expected two numeric columns", "INVALID_ROW")
                xi.append(pair[0])
                magnitude.append(pair[1])
    except OSError as error:
        raise OutputError(f"cannot read {path}: {error.strerror or error}", path=path)
    return np.asarray(xi), np.asarray(magnitude)


def run_fit(config, input_path: str) -> dict:
    """
    Fit log|u_hat| against log|xi| over WINDOW (or the default window) and write fit.csv

    Returns:
        dict: Success payload with the fit and the written path
    """
    xi, magnitude = read_spectrum_csv(input_path)
    window = fit_window(config)
    estimate = fit_power_law(xi, magnitude, window)
    logger.info(f"fit of {input_path}: slope={estimate.slope:.6f} over {estimate.points} points")

    lo, hi = estimate.window
    row = (lo, hi, estimate.slope, estimate.intercept, estimate.r_squared, estimate.points)
    path = write_csv_atomic(output_path(config, 'fit.csv'), FIT_HEADER, [row])
    return create_success_response({'fit': estimate.to_dict(), 'files': [path]})
