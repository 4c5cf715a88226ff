import math
from dataclasses import dataclass
from enum import Enum

from .forcing_spec import ForcingSpec
from .grid import Field

SQRT3 = math.sqrt(3.0)


class Branch(str, Enum):
    POWER_ROOT = 'power_root'
    CARDANO = 'cardano'


@dataclass(frozen=True)
class AlgebraicProfile:
    """Real-valued solution of the equation with epsilon = 0"""

    spec: ForcingSpec
    branch: Branch
    values: Field
    k: int = 0

    def __repr__(self):
        label = self.branch.value if self.branch is Branch.POWER_ROOT else f'cardano[{self.k}]'
        return f'<AlgebraicProfile {label} delta={self.spec.delta:g}>'

    @property
    def far_field(self) -> float:
        """Limit of the profile as |x| -> infinity"""
        if self.branch is Branch.POWER_ROOT:
            return 1.0
        return (0.0, -SQRT3, SQRT3)[self.k]

    @property
    def label(self) -> str:
        return 'U' if self.branch is Branch.POWER_ROOT else f'U{self.k}'

    def to_dict(self):
        return {
            'branch': self.branch.value,
            'k': self.k,
            'far_field': self.far_field,
            'spec': self.spec.to_dict(),
            'grid': self.values.grid.to_dict(),
        }
