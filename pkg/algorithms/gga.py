"""
(2+1) GA Family

Greedy (2+1) GA with the conditional crossover and mutation scheme, and its
FFA counterpart the GFGA.
"""

import logging
import math
from typing import List, Optional

import numpy as np

from algorithms.base import Algorithm
from core.operators import binomial, binomial_gt0, crossover, mutate_exact, random_bits
from core.process import Evaluator
from ffa.frequency_table import FrequencyTable
from problems.registry import Problem

logger = logging.getLogger(__name__)

# Default mutation rate is GOLDEN_RATIO / s
GOLDEN_RATIO = (1 + math.sqrt(5)) / 2

CROSSOVER_GATES = ("fitness", "objective")


class GGA(Algorithm):
    """
    Greedy (2+1) GA.

    Keeps two solutions ordered so that x_c is never worse than x_d.
    Crossover happens only when both are equally good but different; a
    child equal to a parent is always mutated by at least one bit.
    """

    name = "gga"
    option_names = ("p_factor",)

    def __init__(
        self,
        problem: Problem,
        rng: np.random.Generator,
        evaluator: Evaluator,
        p_factor: float = GOLDEN_RATIO,
    ):
        """
        Args:
            problem: Problem to minimize
            rng: Random generator
            evaluator: Evaluator for problem
            p_factor: Mutation rate times s
        """
        super().__init__(problem, rng, evaluator)
        self.p = p_factor / self.s
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"Mutation rate {p_factor}/{self.s} outside (0, 1]")
        self.x_c: Optional[np.ndarray] = None
        self.x_d: Optional[np.ndarray] = None
        self.f_c: Optional[int] = None
        self.f_d: Optional[int] = None

    def _key(self, y: int) -> int:
        """Quantity compared by selection."""
        return y

    def _can_cross(self) -> bool:
        return self.f_c == self.f_d

    def _before_selection(self, f_n: int):
        pass

    def _reorder(self):
        if self._key(self.f_c) > self._key(self.f_d):
            self.x_c, self.x_d = self.x_d, self.x_c
            self.f_c, self.f_d = self.f_d, self.f_c

    def initialize(self):
        self.x_c = random_bits(self.rng, self.s)
        self.f_c = self.evaluate(self.x_c)
        self.x_d = random_bits(self.rng, self.s)
        self.f_d = self.evaluate(self.x_d)
        self._reorder()

    def _iterate(self):
        if self._can_cross() and not np.array_equal(self.x_c, self.x_d):
            x_e = crossover(self.rng, self.x_c, self.x_d, 0.5)
        else:
            x_e = self.x_c

        if np.array_equal(x_e, self.x_c) or np.array_equal(x_e, self.x_d):
            x_n = mutate_exact(self.rng, x_e, binomial_gt0(self.rng, self.s, self.p))
        else:
            ell = binomial(self.rng, self.s, self.p)
            x_n = mutate_exact(self.rng, x_e, ell) if ell > 0 else x_e
        f_n = self.evaluate(x_n)

        self._before_selection(f_n)
        k_c, k_d, k_n = self._key(self.f_c), self._key(self.f_d), self._key(f_n)
        if k_n <= k_d:
            if k_d > k_c or self.rng.random() < 0.5:
                self.x_d, self.f_d = x_n, f_n
            else:
                self.x_c, self.f_c = x_n, f_n
        self._reorder()


class GFGA(GGA):
    """
    (2+1) GA on encounter frequencies.

    At the start of selection the table counts f(x_c), f(x_d) and f(x_n).
    The crossover gate compares frequencies by default; crossover_gate=
    'objective' gates on equal objective values instead.
    """

    name = "gfga"
    option_names = ("p_factor", "crossover_gate")

    def __init__(
        self,
        problem: Problem,
        rng: np.random.Generator,
        evaluator: Evaluator,
        p_factor: float = GOLDEN_RATIO,
        crossover_gate: str = "fitness",
    ):
        super().__init__(problem, rng, evaluator, p_factor)
        if crossover_gate not in CROSSOVER_GATES:
            raise ValueError(
                f"Unknown crossover gate {crossover_gate!r}; use one of {CROSSOVER_GATES}"
            )
        self.crossover_gate = crossover_gate
        self.table = FrequencyTable(problem.upper_bound)

    def _key(self, y: int) -> int:
        return self.table.fitness(y)

    def _can_cross(self) -> bool:
        if self.crossover_gate == "objective":
            return self.f_c == self.f_d
        return self._key(self.f_c) == self._key(self.f_d)

    def _before_selection(self, f_n: int):
        self.table.increment(self.f_c)
        self.table.increment(self.f_d)
        self.table.increment(f_n)

    def frequency_tables(self) -> List[FrequencyTable]:
        return [self.table]
