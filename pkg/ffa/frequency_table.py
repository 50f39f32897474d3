"""
Frequency Table

Under Frequency Fitness Assignment the fitness of a solution is the number
of times its objective value has entered a selection step. The table holds
one 64-bit counter per objective value in [0, UB]; fitness is minimized.
"""

import csv
import logging
import os

import numpy as np

logger = logging.getLogger(__name__)


class FrequencyRangeError(IndexError):
    """An objective value outside [0, UB] reached the table."""


class FrequencyTable:
    """
    Dense counter array owned by a single run.
    """

    def __init__(self, upper_bound: int):
        """
        Initialize all counters to zero.

        Args:
            upper_bound: Largest objective value of the bound problem
        """
        if upper_bound < 0:
            raise ValueError(f"Upper bound must be non-negative, got {upper_bound}")
        self.upper_bound = int(upper_bound)
        self.counts = np.zeros(self.upper_bound + 1, dtype=np.int64)
        self.total_increments = 0

    def _check(self, y: int):
        if not 0 <= y <= self.upper_bound:
            raise FrequencyRangeError(
                f"Objective value {y} outside [0, {self.upper_bound}]; the problem's upper bound is wrong"
            )

    def increment(self, y: int):
        """Count one more encounter of objective value y."""
        self._check(y)
        self.counts[y] += 1
        self.total_increments += 1

    def fitness(self, y: int) -> int:
        """Encounter frequency of objective value y (lower is better)."""
        self._check(y)
        return int(self.counts[y])

    def dump_csv(self, path: str):
        """
        Write the non-zero counters as (objective value, count) rows.

        Args:
            path: Target file; parent directories are created
        """
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["objective", "count"])
            for y in np.flatnonzero(self.counts):
                writer.writerow([int(y), int(self.counts[y])])
        logger.debug(f"Frequency table with {self.total_increments} increments written to {path}")
