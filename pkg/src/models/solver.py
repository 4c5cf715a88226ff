from dataclasses import dataclass

from utils.errors import ValidationError
from utils.validation import InputValidator

from .grid import Field


@dataclass(frozen=True)
class SolverConfig:
    """Settings of the stationary fixed-point iteration"""

    epsilon: float = 0.0
    max_iterations: int = 200
    tolerance: float = 1e-12
    divergence_factor: float = 1e3

    def __post_init__(self):
        object.__setattr__(self, 'epsilon', InputValidator.validate_non_negative(self.epsilon, 'epsilon'))
        object.__setattr__(self, 'max_iterations',
                           InputValidator.validate_positive_int(self.max_iterations, 'max_iterations'))
        tolerance = InputValidator.validate_positive(self.tolerance, 'tolerance')
        if tolerance >= 1:
            raise ValidationError(f"tolerance must be < 1, got {tolerance}", "OUT_OF_RANGE")
        object.__setattr__(self, 'tolerance', tolerance)
        object.__setattr__(self, 'divergence_factor',
                           InputValidator.validate_positive(self.divergence_factor, 'divergence_factor'))

    def with_epsilon(self, epsilon: float) -> 'SolverConfig':
        return SolverConfig(epsilon, self.max_iterations, self.tolerance, self.divergence_factor)

    def to_dict(self):
        return {
            'epsilon': self.epsilon,
            'max_iterations': self.max_iterations,
            'tolerance': self.tolerance,
            'divergence_factor': self.divergence_factor,
        }


@dataclass(frozen=True)
class StationaryResult:
    """epsilon-corrected stationary solution u_eps = u0 + v on the periodic grid"""

    u_eps: Field
    v: Field
    iterations: int
    residual: float
    converged: bool
    epsilon: float = 0.0
    increments: tuple = ()

    def __repr__(self):
        return (f'<StationaryResult eps={self.epsilon:g} converged={self.converged} '
                f'iterations={self.iterations} residual={self.residual:.3e}>')

    @property
    def v_max(self) -> float:
        return float(abs(self.v.values).max())

    def to_dict(self):
        return {
            'epsilon': self.epsilon,
            'converged': self.converged,
            'iterations': self.iterations,
            'residual': self.residual,
            'v_max': self.v_max,
        }
