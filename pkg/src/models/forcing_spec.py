import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional

from utils.errors import ValidationError
from utils.validation import InputValidator


class Regime(IntEnum):
    """Value of P: time independent forcing (0) or time periodic forcing (1)"""
    ZERO = 0
    ONE = 1


@dataclass(frozen=True)
class ForcingSpec:
    """Parameters of the forcing f (P = 0) or Q (P = 1).

    alpha defaults to 1/(2 sigma + 1) when P = 0 and to 1/2 when P = 1, the
    exponents whose cascades are |xi|^(-2 alpha - 1).
    """

    delta: float
    beta: float = 1.0
    sigma: int = 1
    alpha: Optional[float] = None
    p: Regime = Regime.ZERO
    focusing: bool = False
    dimension: int = 1
    power: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, 'delta', InputValidator.validate_positive(self.delta, 'delta'))
        object.__setattr__(self, 'beta', InputValidator.validate_positive(self.beta, 'beta'))
        object.__setattr__(self, 'sigma', InputValidator.validate_positive_int(self.sigma, 'sigma'))
        object.__setattr__(self, 'dimension', InputValidator.validate_positive_int(self.dimension, 'dimension'))
        object.__setattr__(self, 'focusing', InputValidator.validate_bool(self.focusing, 'focusing'))

        try:
            regime = Regime(int(self.p))
        except (ValueError, TypeError):
            raise ValidationError(f"P must be 0 or 1, got {self.p!r}", "INVALID_CHOICE")
        object.__setattr__(self, 'p', regime)

        if regime is Regime.ONE and self.sigma != 1:
            raise ValidationError("P = 1 requires the cubic nonlinearity (sigma = 1)", "INVALID_SIGMA")

        alpha = self.alpha
        if alpha is None:
            alpha = 0.5 if regime is Regime.ONE else 1.0 / (2 * self.sigma + 1)
        object.__setattr__(self, 'alpha', InputValidator.validate_open_unit(alpha, 'alpha'))

    @classmethod
    def from_power(cls, power: float, delta: float, sigma: int = 1, **kwargs) -> 'ForcingSpec':
        """
        Build a P = 0 spec for the forcing f^power

        The ratio power/(2 sigma + 1) is split as n + alpha; only alpha drives
        the quasi-singularity, so the smooth factor f^n is recorded, not formed.

        Args:
            power: Exponent k > 0 of the forcing
            delta: Depth parameter
            sigma: Nonlinearity exponent

        Returns:
            ForcingSpec: Spec carrying alpha = frac(k/(2 sigma + 1)) and power = k

        Raises:
            ValidationError: If the ratio is an integer (no quasi-singularity)
        """
        power = InputValidator.validate_positive(power, 'power')
        sigma = InputValidator.validate_positive_int(sigma, 'sigma')
        ratio = power / (2 * sigma + 1)
        smooth_order = math.floor(ratio)
        alpha = ratio - smooth_order
        if alpha < 1e-12 or alpha > 1 - 1e-12:
            raise ValidationError(
                f"power {power} gives an integer exponent {ratio:g}: the forcing has no quasi-singularity",
                "INTEGER_EXPONENT"
            )
        return cls(delta=delta, sigma=sigma, alpha=alpha, power=power, **kwargs)

    @property
    def smooth_order(self) -> int:
        """Integer part n of power/(2 sigma + 1); 0 without a power"""
        if self.power is None:
            return 0
        return math.floor(self.power / (2 * self.sigma + 1))

    @property
    def cascade_exponent(self) -> float:
        """Expected decay rate 2 alpha + d of the Fourier magnitude"""
        return 2.0 * self.alpha + self.dimension

    @property
    def is_algebraic_exponent(self) -> bool:
        """True when u0 = f^alpha solves u^(2 sigma + 1) = f"""
        return abs(self.alpha * (2 * self.sigma + 1) - 1.0) < 1e-12

    @property
    def nonlinearity_sign(self) -> int:
        return -1 if self.focusing else 1

    def to_dict(self):
        return {
            'delta': self.delta,
            'beta': self.beta,
            'sigma': self.sigma,
            'alpha': self.alpha,
            'p': int(self.p),
            'focusing': self.focusing,
            'dimension': self.dimension,
            'power': self.power,
        }
