"""
Compensated summation for long same-sign series
"""
import numpy as np


class CompensatedSum:
    """Running Kahan summation, elementwise over an array of independent sums.

    Chunks of terms are reduced with numpy's pairwise sum, then folded into the
    running totals with a carry that holds the rounding error of each fold.
    """

    def __init__(self, shape=()):
        self.total = np.zeros(shape, dtype=float)
        self.carry = np.zeros(shape, dtype=float)

    def add(self, values, index=None):
        """Add values to every sum, or to the sums selected by index"""
        if index is None:
            index = Ellipsis
        value = np.asarray(values, dtype=float) - self.carry[index]
        previous = self.total[index]
        updated = previous + value
        self.carry[index] = (updated - previous) - value
        self.total[index] = updated

    def add_terms(self, terms, index=None):
        """Fold the row sums of a block of terms (last axis) into the running totals"""
        self.add(np.sum(terms, axis=-1), index)

    @property
    def value(self):
        return self.total - self.carry
