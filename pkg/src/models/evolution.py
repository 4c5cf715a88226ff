from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np

from utils.errors import ValidationError
from utils.validation import InputValidator


class ReferenceKind(str, Enum):
    STATIONARY = 'stationary'
    ROTATING = 'rotating'


@dataclass(frozen=True)
class EvolutionConfig:
    """Time stepping settings; ROTATING references follow U_k(x) e^(-3iPt)"""

    dt: float = 1e-3
    t_final: float = 1.0
    nu: float = 0.0
    record_every: int = 10
    reference: ReferenceKind = ReferenceKind.STATIONARY
    k: int = 1

    def __post_init__(self):
        dt = InputValidator.validate_positive(self.dt, 'dt')
        t_final = InputValidator.validate_positive(self.t_final, 't_final')
        if dt > t_final:
            raise ValidationError(f"dt={dt} exceeds t_final={t_final}", "INVALID_TIME_STEP")
        object.__setattr__(self, 'dt', dt)
        object.__setattr__(self, 't_final', t_final)
        object.__setattr__(self, 'nu', InputValidator.validate_non_negative(self.nu, 'nu'))
        object.__setattr__(self, 'record_every',
                           InputValidator.validate_positive_int(self.record_every, 'record_every'))
        object.__setattr__(self, 'reference', ReferenceKind(self.reference))
        object.__setattr__(self, 'k', InputValidator.validate_choice(self.k, 'branch', [0, 1, 2]))

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))

    def to_dict(self):
        return {
            'dt': self.dt,
            't_final': self.t_final,
            'nu': self.nu,
            'record_every': self.record_every,
            'reference': self.reference.value,
            'k': self.k,
        }


@dataclass
class TrajectoryRecord:
    """Time series recorded along an evolution; append-only while running.

    renorm_energy is None when sigma != 1 (no renormalized energy defined).
    """

    times: List[float] = field(default_factory=list)
    l2_v: List[float] = field(default_factory=list)
    energy: List[float] = field(default_factory=list)
    renorm_energy: Optional[List[float]] = field(default_factory=list)
    mass: List[float] = field(default_factory=list)

    def append(self, t: float, l2_v: float, energy: float, renorm_energy: Optional[float], mass: float):
        self.times.append(float(t))
        self.l2_v.append(float(l2_v))
        self.energy.append(float(energy))
        if self.renorm_energy is not None:
            self.renorm_energy.append(float(renorm_energy))
        self.mass.append(float(mass))

    def __len__(self):
        return len(self.times)

    def as_arrays(self):
        return {
            't': np.asarray(self.times),
            'l2_v': np.asarray(self.l2_v),
            'energy': np.asarray(self.energy),
            'renorm_energy': None if self.renorm_energy is None else np.asarray(self.renorm_energy),
            'mass': np.asarray(self.mass),
        }

    def rows(self):
        for index, t in enumerate(self.times):
            renorm = None if self.renorm_energy is None else self.renorm_energy[index]
            yield t, self.l2_v[index], self.energy[index], renorm, self.mass[index]


@dataclass(frozen=True)
class EnvelopeFit:
    """Exponential envelope A e^(C t) bounding a perturbation norm"""

    amplitude: float
    rate: float
    r_squared: float

    def __call__(self, t):
        return self.amplitude * np.exp(self.rate * np.asarray(t))

    def to_dict(self):
        return {
            'envelope_amplitude': self.amplitude,
            'envelope_rate': self.rate,
            'envelope_r2': self.r_squared,
        }
