"""
Discrete Fourier transforms, spectral derivatives and discrete norms on uniform 1-D grids

The transform approximates the continuum convention
    u_hat(xi) = (2 pi)^(-1/2) * integral e^(-i x xi) u(x) dx
by the Riemann sum dx (2 pi)^(-1/2) sum_j e^(-i x_j xi_k) u(x_j), so that discrete
spectra are directly comparable with continuum Fourier magnitudes.
"""
import logging
from enum import Enum

import numpy as np

from src.models import Domain, Field, Grid1D
from utils.errors import ValidationError
from utils.validation import InputValidator

logger = logging.getLogger(__name__)

SQRT_2PI = np.sqrt(2.0 * np.pi)


class NormKind(str, Enum):
    L2 = 'L2'
    HS_DOT = 'HsDot'
    L2_WEIGHTED = 'L2Weighted'


def _require_periodic(field: Field, domain: Domain):
    if not field.grid.is_periodic:
        raise ValidationError("spectral operations need a periodic grid", "NOT_PERIODIC")
    if field.domain is not domain:
        raise ValidationError(f"expected a {domain.value}-space field, got {field.domain.value}", "WRONG_DOMAIN")


def _phase(grid: Grid1D) -> np.ndarray:
    # x_0 = -L, so e^(-i x_0 xi_k) = e^(i k pi) = (-1)^k on the natural lattice
    k = np.arange(-grid.n_points // 2, grid.n_points // 2)
    return np.where(k % 2 == 0, 1.0, -1.0)


def dft_forward(field: Field) -> Field:
    """
    Transform a physical-space field to the frequency lattice

    Args:
        field: Field on a periodic grid

    Returns:
        Field: Frequency-space samples u_hat(xi_k), natural order

    Raises:
        ValidationError: If the grid is not periodic or the field is not in x-space
    """
    _require_periodic(field, Domain.PHYSICAL)
    grid = field.grid
    spectrum = np.fft.fftshift(np.fft.fft(field.values)) * (grid.dx / SQRT_2PI) * _phase(grid)
    return Field(grid, spectrum, Domain.FREQUENCY)


def dft_backward(spectrum: Field) -> Field:
    """Inverse of dft_forward"""
    _require_periodic(spectrum, Domain.FREQUENCY)
    grid = spectrum.grid
    unscaled = np.fft.ifft(np.fft.ifftshift(spectrum.values * _phase(grid)))
    return Field(grid, unscaled * (SQRT_2PI / grid.dx), Domain.PHYSICAL)


def spectral_derivative(field: Field, order: int = 1) -> Field:
    """
    Differentiate a periodic field with the Fourier multiplier (i xi)^order

    Real input gives real output.
    """
    _require_periodic(field, Domain.PHYSICAL)
    grid = field.grid
    xi = 2.0 * np.pi * np.fft.fftfreq(grid.n_points, d=grid.dx)
    multiplier = (1j * xi) ** order
    if order % 2 == 1:
        # the Nyquist mode has no odd derivative on a real grid
        multiplier[grid.n_points // 2] = 0.0
    derivative = np.fft.ifft(np.fft.fft(field.values) * multiplier)
    if not np.iscomplexobj(field.values):
        derivative = derivative.real
    return field.with_values(derivative)


def discrete_norm(field: Field, kind: NormKind = NormKind.L2, order: float = 0.0) -> float:
    """
    Discrete L2, homogeneous Sobolev or weighted L2 norm

    Args:
        field: Field in physical space (any kind) or frequency space (L2 only)
        kind: L2, HsDot (multiplier |xi|^order) or L2Weighted (weight <x>^order)
        order: Sobolev index s or weight exponent k, >= 0

    Returns:
        float: The norm, consistent with Plancherel for the dft_forward convention

    Raises:
        ValidationError: For a negative order, non-finite samples or an unsupported domain
    """
    kind = NormKind(kind)
    order = InputValidator.validate_non_negative(order, 'order')
    values = field.values
    if not np.all(np.isfinite(values)):
        raise ValidationError("field contains non-finite values", "NON_FINITE")

    grid = field.grid
    if field.domain is Domain.FREQUENCY:
        if kind is NormKind.L2_WEIGHTED:
            raise ValidationError("weighted norms are computed in physical space", "WRONG_DOMAIN")
        multiplier = np.abs(grid.frequencies) ** order if kind is NormKind.HS_DOT else 1.0
        return float(np.sqrt(grid.dxi * np.sum(np.abs(multiplier * values) ** 2)))

    if kind is NormKind.HS_DOT:
        return discrete_norm(dft_forward(field), kind, order)

    weight = (1.0 + grid.points ** 2) ** (order / 2.0) if kind is NormKind.L2_WEIGHTED else 1.0
    return float(np.sqrt(grid.dx * np.sum(np.abs(weight * values) ** 2)))


def to_periodic(field: Field, boundary_value: float) -> Field:
    """Embed a Dirichlet interior field into the periodic grid, x = -L gets boundary_value"""
    if field.grid.is_periodic:
        return field
    values = np.concatenate(([boundary_value], field.values))
    return Field(field.grid.periodic(), values)


def to_dirichlet(field: Field) -> Field:
    """Restrict a periodic field to the Dirichlet interior nodes (drops x = -L)"""
    if not field.grid.is_periodic:
        return field
    return Field(field.grid.dirichlet(), field.values[1:])


def positive_half(spectrum: Field):
    """Positive frequencies and magnitudes of a frequency-space field"""
    if spectrum.domain is not Domain.FREQUENCY:
        raise ValidationError("expected a frequency-space field", "WRONG_DOMAIN")
    xi = spectrum.grid.frequencies
    mask = xi > 0
    return np.asarray(xi[mask]), np.abs(spectrum.values[mask])
