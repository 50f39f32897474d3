"""
(1+1) EA Family

The (1+1) EA, its FFA counterpart the FEA, and the EAFEA hybrid that runs
one of each in lockstep on a shared budget.
"""

import logging
from typing import List, Optional

import numpy as np

from algorithms.base import Algorithm
from core.operators import binomial_gt0, mutate_exact, random_bits
from core.process import Evaluator
from ffa.frequency_table import FrequencyTable
from problems.registry import Problem

logger = logging.getLogger(__name__)


class EA(Algorithm):
    """
    (1+1) EA with Bin>0(s, 1/s) flips, accepting offspring that are not worse.
    """

    name = "ea"

    def __init__(self, problem: Problem, rng: np.random.Generator, evaluator: Evaluator):
        super().__init__(problem, rng, evaluator)
        self.x_c: Optional[np.ndarray] = None
        self.f_c: Optional[int] = None
        # Last offspring, read by the EAFEA hybrid
        self.x_n: Optional[np.ndarray] = None
        self.f_n: Optional[int] = None

    def initialize(self):
        self.x_c = random_bits(self.rng, self.s)
        self.f_c = self.evaluate(self.x_c)

    def _offspring(self):
        ell = binomial_gt0(self.rng, self.s, 1.0 / self.s)
        self.x_n = mutate_exact(self.rng, self.x_c, ell)
        self.f_n = self.evaluate(self.x_n)

    def _accepts(self) -> bool:
        return self.f_n <= self.f_c

    def _iterate(self):
        self._offspring()
        if self._accepts():
            self.x_c, self.f_c = self.x_n, self.f_n


class FEA(EA):
    """
    (1+1) FEA: the EA with acceptance on encounter frequencies.

    Both objective values are counted before they are compared, so a
    worsening move is accepted as soon as the current value has been seen
    at least as often as the new one.
    """

    name = "fea"

    def __init__(self, problem: Problem, rng: np.random.Generator, evaluator: Evaluator):
        super().__init__(problem, rng, evaluator)
        self.table = FrequencyTable(problem.upper_bound)

    def _accepts(self) -> bool:
        self.table.increment(self.f_c)
        self.table.increment(self.f_n)
        return self.table.fitness(self.f_n) <= self.table.fitness(self.f_c)

    def frequency_tables(self) -> List[FrequencyTable]:
        return [self.table]


OVERWRITE_RULES = ("leq", "equal")


class EAFEA(Algorithm):
    """
    Alternate one EA iteration and one FEA iteration.

    After each FEA iteration its new solution replaces the EA's current
    solution when it is at least as good (or, with overwrite='equal', only
    when the objective values tie).
    """

    name = "eafea"
    option_names = ("overwrite",)

    def __init__(
        self,
        problem: Problem,
        rng: np.random.Generator,
        evaluator: Evaluator,
        overwrite: str = "leq",
    ):
        super().__init__(problem, rng, evaluator)
        if overwrite not in OVERWRITE_RULES:
            raise ValueError(f"Unknown overwrite rule {overwrite!r}; use one of {OVERWRITE_RULES}")
        self.overwrite = overwrite
        self.ea = EA(problem, rng, evaluator)
        self.fea = FEA(problem, rng, evaluator)

    def initialize(self):
        self.ea.initialize()
        self.fea.initialize()

    def _iterate(self):
        self.ea._iterate()
        self.fea._iterate()
        f_new = self.fea.f_n
        if self.overwrite == "equal":
            take = f_new == self.ea.f_c
        else:
            take = f_new <= self.ea.f_c
        if take:
            self.ea.x_c, self.ea.f_c = self.fea.x_n, f_new

    def frequency_tables(self) -> List[FrequencyTable]:
        return self.fea.frequency_tables()
