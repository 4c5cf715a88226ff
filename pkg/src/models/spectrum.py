from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class SpectrumEstimate:
    """Fourier magnitudes on positive frequencies with a log-log power-law fit"""

    xi: np.ndarray
    magnitude: np.ndarray
    slope: float
    intercept: float
    r_squared: float
    window: Tuple[float, float]
    points: int = 0

    def __repr__(self):
        return (f'<SpectrumEstimate slope={self.slope:.4f} r2={self.r_squared:.6f} '
                f'window=({self.window[0]:g}, {self.window[1]:g})>')

    def in_window(self) -> np.ndarray:
        lo, hi = self.window
        return (self.xi >= lo) & (self.xi <= hi)

    def to_dict(self):
        return {
            'slope': self.slope,
            'intercept': self.intercept,
            'r_squared': self.r_squared,
            'xi_lo': self.window[0],
            'xi_hi': self.window[1],
            'points': self.points,
        }
