"""
Forcing profiles f and Q, binomial coefficients and the series for the spectrum of f^alpha - 1
"""
import logging
import math

import numpy as np
from scipy.special import gamma, gammaln

from src.models import Field, ForcingSpec, Grid1D, Regime
from utils.errors import ValidationError, WrongRegimeError
from utils.summation import CompensatedSum
from utils.validation import InputValidator

logger = logging.getLogger(__name__)

# e^(-40) ~ 4e-18 is below double precision relative to the leading terms
SERIES_DAMPING_CAP = 40.0
SERIES_BLOCK_BUDGET = 2 ** 20


def eval_f(spec: ForcingSpec, grid: Grid1D) -> Field:
    """
    Time independent forcing f(x) = 1 - e^(-delta) e^(-beta x^2 / 2)

    Raises:
        WrongRegimeError: If spec is a P = 1 spec
    """
    if spec.p is not Regime.ZERO:
        raise WrongRegimeError("f is defined for P = 0; use eval_Q for P = 1")

    x = grid.points
    return Field(grid, 1.0 - np.exp(-spec.delta - spec.beta * x ** 2 / 2.0))


def eval_Q(spec: ForcingSpec, grid: Grid1D) -> Field:
    """
    Time periodic forcing amplitude Q = 4 c^3 - 3 c, c(x) = e^(-delta/2 - beta x^2/4)

    Raises:
        WrongRegimeError: If spec is a P = 0 spec
    """
    if spec.p is not Regime.ONE:
        raise WrongRegimeError("Q is defined for P = 1; use eval_f for P = 0")

    x = grid.points
    exponent = spec.delta / 2.0 + spec.beta * x ** 2 / 4.0
    return Field(grid, 4.0 * np.exp(-3.0 * exponent) - 3.0 * np.exp(-exponent))


def rhs_field(spec: ForcingSpec, grid: Grid1D) -> Field:
    """Right hand side of the stationary equation: f for P = 0, 2Q for P = 1"""
    if spec.p is Regime.ZERO:
        return eval_f(spec, grid)
    q = eval_Q(spec, grid)
    return q.with_values(2.0 * q.values)


def series_coefficients(alpha: float, n_max: int) -> np.ndarray:
    """
    Binomial coefficients a_1 .. a_{n_max} of (1 + z)^alpha

    Uses a_0 = 1, a_{n+1} = a_n (alpha - n) / (n + 1); no Gamma function at
    negative arguments is evaluated.

    Raises:
        ValidationError: If alpha is outside (0, 1) or n_max < 1
    """
    alpha = InputValidator.validate_open_unit(alpha, 'alpha')
    n_max = InputValidator.validate_positive_int(n_max, 'n_max')

    n = np.arange(n_max, dtype=float)
    return np.cumprod((alpha - n) / (n + 1.0))


def coefficient_asymptote(alpha: float) -> float:
    """Limit of n^(1 + alpha) (-1)^n a_n: -sin(pi alpha) Gamma(alpha + 1) / pi"""
    return -math.sin(math.pi * alpha) * float(gamma(alpha + 1.0)) / math.pi


def coefficient_from_log_gamma(alpha: float, n: int) -> float:
    """
    a_n through the reflection formula and log-Gamma

    a_n = (-1)^(n+1) sin(pi alpha) Gamma(alpha + 1) Gamma(n - alpha) / (pi Gamma(n + 1))
    """
    alpha = InputValidator.validate_open_unit(alpha, 'alpha')
    n = InputValidator.validate_positive_int(n, 'n')
    magnitude = math.sin(math.pi * alpha) * float(gamma(alpha + 1.0)) / math.pi
    magnitude *= math.exp(float(gammaln(n - alpha) - gammaln(n + 1.0)))
    return magnitude if n % 2 == 1 else -magnitude


def series_length(delta: float) -> int:
    return int(math.ceil(SERIES_DAMPING_CAP / delta))


def series_spectrum(spec: ForcingSpec, xi, tol: float = 1e-12) -> np.ndarray:
    """
    Semi-analytic Fourier transform of f^alpha - 1

    S(xi) = sum_{n >= 1} (-1)^n a_n (beta n)^(-d/2) e^(-n delta) e^(-xi^2 / (2 n beta))

    Every term is negative, so the sum is accumulated on magnitudes. Each
    frequency stops at the first n > xi^2/(2 beta) whose term falls below
    tol times the partial sum, and never beyond ceil(40/delta) terms.

    Args:
        spec: Forcing parameters (delta, beta, alpha, dimension)
        xi: Frequencies
        tol: Relative truncation tolerance

    Returns:
        np.ndarray: S(xi), same shape as xi

    Raises:
        ValidationError: For non-finite frequencies or a non-positive tolerance
    """
    tol = InputValidator.validate_positive(tol, 'tol')
    xi = np.asarray(xi, dtype=float)
    if not np.all(np.isfinite(xi)):
        raise ValidationError("frequencies must be finite", "NON_FINITE")

    shape = xi.shape
    xi_sq = np.abs(xi.ravel()) ** 2
    n_cap = series_length(spec.delta)
    magnitudes = np.abs(series_coefficients(spec.alpha, n_cap))
    half_dimension = spec.dimension / 2.0

    accumulator = CompensatedSum(xi_sq.shape)
    active = np.ones(xi_sq.shape, dtype=bool)
    onset = xi_sq / (2.0 * spec.beta)
    block = max(256, SERIES_BLOCK_BUDGET // max(1, xi_sq.size))
    used = np.zeros(xi_sq.shape, dtype=int)

    for start in range(0, n_cap, block):
        rows = np.flatnonzero(active)
        if rows.size == 0:
            break

        n = np.arange(start + 1, min(start + block, n_cap) + 1, dtype=float)
        envelope = magnitudes[start:start + n.size] * (spec.beta * n) ** (-half_dimension) * np.exp(-n * spec.delta)
        terms = envelope[None, :] * np.exp(-xi_sq[rows, None] / (2.0 * spec.beta * n[None, :]))

        partial = accumulator.value[rows, None] + np.cumsum(terms, axis=1)
        settled = (n[None, :] > onset[rows, None]) & (terms < tol * partial)
        stopped = settled.any(axis=1)
        last = np.where(stopped, settled.argmax(axis=1), n.size - 1)
        kept = np.arange(n.size)[None, :] <= last[:, None]

        accumulator.add_terms(np.where(kept, terms, 0.0), rows)
        used[rows] += last + 1
        active[rows[stopped]] = False

    logger.debug(f"series spectrum: delta={spec.delta:g}, {xi_sq.size} frequencies, "
                 f"{int(used.max(initial=0))} terms at most (cap {n_cap})")
    return -accumulator.value.reshape(shape)
