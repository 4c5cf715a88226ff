from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from functools import cached_property

import numpy as np

from utils.errors import ValidationError
from utils.validation import InputValidator

REAL_TOLERANCE = 1e-12


class Boundary(str, Enum):
    PERIODIC = 'periodic'
    DIRICHLET = 'dirichlet'


class Domain(str, Enum):
    PHYSICAL = 'physical'
    FREQUENCY = 'frequency'


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on [-half_length, half_length).

    Periodic grids carry the n_points nodes x_j = -L + j*dx. Dirichlet grids
    carry the n_points - 1 interior nodes j = 1 .. n_points - 1; the boundary
    nodes x = -L and x = L hold prescribed values.
    """

    n_points: int = 2 ** 14
    half_length: float = 2 * np.pi
    boundary: Boundary = Boundary.PERIODIC

    def __post_init__(self):
        object.__setattr__(self, 'n_points', InputValidator.validate_power_of_two(self.n_points, 'n_points'))
        object.__setattr__(self, 'half_length', InputValidator.validate_positive(self.half_length, 'half_length'))
        object.__setattr__(self, 'boundary', Boundary(self.boundary))

    def __repr__(self):
        return f'<Grid1D n={self.n_points} L={self.half_length:g} {self.boundary.value}>'

    @property
    def dx(self) -> float:
        return 2.0 * self.half_length / self.n_points

    @property
    def dxi(self) -> float:
        return np.pi / self.half_length

    @property
    def size(self) -> int:
        """Number of unknowns stored per field"""
        if self.boundary is Boundary.DIRICHLET:
            return self.n_points - 1
        return self.n_points

    @property
    def is_periodic(self) -> bool:
        return self.boundary is Boundary.PERIODIC

    @cached_property
    def points(self) -> np.ndarray:
        nodes = -self.half_length + self.dx * np.arange(self.n_points)
        if self.boundary is Boundary.DIRICHLET:
            nodes = nodes[1:]
        nodes.flags.writeable = False
        return nodes

    @cached_property
    def frequencies(self) -> np.ndarray:
        """Frequency lattice in natural (monotone) order"""
        k = np.arange(-self.n_points // 2, self.n_points // 2)
        lattice = k * self.dxi
        lattice.flags.writeable = False
        return lattice

    def periodic(self) -> 'Grid1D':
        return Grid1D(self.n_points, self.half_length, Boundary.PERIODIC)

    def dirichlet(self) -> 'Grid1D':
        return Grid1D(self.n_points, self.half_length, Boundary.DIRICHLET)

    def to_dict(self):
        return {
            'n_points': self.n_points,
            'half_length': self.half_length,
            'dx': self.dx,
            'boundary': self.boundary.value,
        }


@dataclass(frozen=True)
class Field:
    """Complex or real samples of a function on a grid, in x or in xi"""

    grid: Grid1D
    values: np.ndarray = dataclass_field(repr=False)
    domain: Domain = Domain.PHYSICAL

    def __post_init__(self):
        domain = Domain(self.domain)
        values = np.array(self.values, copy=True)
        if values.ndim != 1:
            raise ValidationError(f"field values must be one-dimensional, got shape {values.shape}")

        expected = self.grid.size if domain is Domain.PHYSICAL else self.grid.n_points
        if values.shape[0] != expected:
            raise ValidationError(
                f"field has {values.shape[0]} values but {self.grid!r} expects {expected}",
                "LENGTH_MISMATCH"
            )

        if domain is Domain.FREQUENCY and not self.grid.is_periodic:
            raise ValidationError("frequency-space fields live on periodic grids only")

        if not np.iscomplexobj(values):
            values = values.astype(float)
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'domain', domain)

    def __repr__(self):
        return f'<Field {self.domain.value} on {self.grid!r}>'

    @property
    def axis(self) -> np.ndarray:
        """Sample positions: grid points or frequency lattice"""
        if self.domain is Domain.FREQUENCY:
            return self.grid.frequencies
        return self.grid.points

    def is_real(self, tolerance: float = REAL_TOLERANCE) -> bool:
        if not np.iscomplexobj(self.values):
            return True
        scale = float(np.max(np.abs(self.values), initial=0.0))
        return float(np.max(np.abs(self.values.imag), initial=0.0)) <= tolerance * scale

    def real(self) -> 'Field':
        return self.with_values(np.real(self.values))

    def with_values(self, values) -> 'Field':
        return Field(self.grid, values, self.domain)

    def same_support(self, other: 'Field') -> bool:
        return self.grid == other.grid and self.domain is other.domain

    def __sub__(self, other):
        if isinstance(other, Field):
            if not self.same_support(other):
                raise ValidationError("fields live on different grids", "GRID_MISMATCH")
            return self.with_values(self.values - other.values)
        return self.with_values(self.values - other)

    def __add__(self, other):
        if isinstance(other, Field):
            if not self.same_support(other):
                raise ValidationError("fields live on different grids", "GRID_MISMATCH")
            return self.with_values(self.values + other.values)
        return self.with_values(self.values + other)
