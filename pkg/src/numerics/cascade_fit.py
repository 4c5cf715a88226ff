"""
Cascade exponent fits and the weighted spectral deviation
"""
import logging
import math

import numpy as np
from scipy import stats

from src.models import AlgebraicProfile, Domain, Field, SpectrumEstimate
from utils.errors import (
    DegenerateSpectrumError, EmptyWindowError, InsufficientDataError, ValidationError
)
from utils.validation import InputValidator

from .grid_spectral import dft_forward, positive_half, to_periodic

logger = logging.getLogger(__name__)

DEFAULT_XI0 = 2.0
WINDOW_MARGIN = 0.3
MIN_FIT_POINTS = 3


def default_window(delta: float, xi0: float = DEFAULT_XI0) -> tuple:
    """
    Fit window (xi0, 0.3 / sqrt(delta)) realizing xi0^2 <= |xi|^2 << 1/delta

    Raises:
        EmptyWindowError: If 0.3 / sqrt(delta) <= xi0
    """
    delta = InputValidator.validate_positive(delta, 'delta')
    xi0 = InputValidator.validate_positive(xi0, 'xi0')
    upper = WINDOW_MARGIN / math.sqrt(delta)
    if upper <= xi0:
        raise EmptyWindowError(
            f"window upper edge {upper:.4g} does not exceed xi0={xi0:g}; decrease delta or xi0"
        )
    return xi0, upper


def fit_power_law(xi, magnitude, window: tuple) -> SpectrumEstimate:
    """
    Least-squares slope of log(magnitude) against log(xi) over the window

    Only positive frequencies inside [lo, hi] enter the fit.

    Args:
        xi: Frequencies
        magnitude: Non-negative magnitudes, same length as xi
        window: (lo, hi) with 0 < lo < hi

    Returns:
        SpectrumEstimate: Positive-frequency data with slope, intercept and R^2

    Raises:
        InsufficientDataError: If fewer than 3 samples fall in the window
        DegenerateSpectrumError: If a magnitude in the window is zero
    """
    lo, hi = InputValidator.validate_window(window)
    xi = np.asarray(xi, dtype=float)
    magnitude = np.asarray(magnitude, dtype=float)
    if xi.shape != magnitude.shape or xi.ndim != 1:
        raise ValidationError("xi and magnitude must be 1-D arrays of equal length", "LENGTH_MISMATCH")

    order = np.argsort(xi)
    xi, magnitude = xi[order], magnitude[order]
    positive = xi > 0
    xi, magnitude = xi[positive], magnitude[positive]

    inside = (xi >= lo) & (xi <= hi)
    points = int(np.count_nonzero(inside))
    if points < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"only {points} frequencies in window ({lo:g}, {hi:g}); need {MIN_FIT_POINTS}"
        )
    if np.any(magnitude[inside] <= 0):
        raise DegenerateSpectrumError(f"spectrum vanishes inside window ({lo:g}, {hi:g})")

    fit = stats.linregress(np.log(xi[inside]), np.log(magnitude[inside]))
    r_squared = min(1.0, float(fit.rvalue) ** 2)

    logger.debug(f"power-law fit over ({lo:g}, {hi:g}): slope={fit.slope:.6f}, r2={r_squared:.8f}, points={points}")
    return SpectrumEstimate(
        xi=xi,
        magnitude=magnitude,
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=r_squared,
        window=(lo, hi),
        points=points,
    )


def weighted_deviation(spec_a: Field, spec_b: Field, exponent: float, window: tuple) -> float:
    """
    max over the window of |xi|^exponent |spec_a(xi) - spec_b(xi)|

    Both |xi| and -|xi| are scanned; the window applies to |xi|.

    Raises:
        ValidationError: If the spectra do not share a frequency lattice
    """
    if spec_a.domain is not Domain.FREQUENCY or spec_b.domain is not Domain.FREQUENCY:
        raise ValidationError("weighted deviation compares frequency-space fields", "WRONG_DOMAIN")
    if spec_a.grid != spec_b.grid:
        raise ValidationError("spectra live on different frequency lattices", "GRID_MISMATCH")
    exponent = InputValidator.validate_real(exponent, 'exponent')
    lo, hi = InputValidator.validate_window(window)

    xi = np.abs(spec_a.grid.frequencies)
    inside = (xi >= lo) & (xi <= hi)
    if not np.any(inside):
        raise InsufficientDataError(f"no lattice frequency in window ({lo:g}, {hi:g})")

    weighted = xi[inside] ** exponent * np.abs(spec_a.values[inside] - spec_b.values[inside])
    return float(np.max(weighted))


def profile_spectrum(field: Field, far_field: float = 0.0) -> Field:
    """DFT of field - far_field, with Dirichlet fields embedded on the periodic grid"""
    periodic = to_periodic(field, far_field)
    return dft_forward(periodic - far_field)


def estimate_cascade(profile: AlgebraicProfile, window: tuple = None, xi0: float = DEFAULT_XI0) -> SpectrumEstimate:
    """
    Fit the cascade exponent of an algebraic profile

    The analytic far-field constant is subtracted first; it only contributes at xi = 0.
    """
    if window is None:
        window = default_window(profile.spec.delta, xi0)
    xi, magnitude = positive_half(profile_spectrum(profile.values, profile.far_field))
    return fit_power_law(xi, magnitude, window)
