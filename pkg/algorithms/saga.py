"""
Self-Adjusting (1+(λ,λ)) GA Family

The self-adjusting (1+(λ,λ)) GA, its FFA counterpart the SAFGA, and the
SAFGAP hybrid that runs as the pure GA until λ saturates and falls back to
frequencies until the best-so-far solution improves again.
"""

import logging
import math
from typing import Dict, List, Optional

import numpy as np

from algorithms.base import Algorithm
from core.operators import binomial_gt0, crossover, mutate_exact, random_bits
from core.process import Evaluator
from ffa.frequency_table import FrequencyTable
from problems.registry import Problem

logger = logging.getLogger(__name__)


def offspring_count(lam: float, s: int) -> int:
    """Population size λ' = round(λ), half-up, clamped to [1, s]."""
    return min(s, max(1, int(math.floor(lam + 0.5))))


class SAGA(Algorithm):
    """
    Self-adjusting (1+(λ,λ)) GA.

    Each iteration mutates x_c λ' times with a shared flip count, crosses
    the best mutant x' back into x_c λ' times, and adapts λ by the one-fifth
    rule: divide by F after a strict improvement, multiply by F^(1/4)
    otherwise.
    """

    name = "saga"
    option_names = ("F",)

    def __init__(
        self,
        problem: Problem,
        rng: np.random.Generator,
        evaluator: Evaluator,
        F: float = 1.5,
    ):
        super().__init__(problem, rng, evaluator)
        if F <= 1.0:
            raise ValueError(f"Adaptation factor F must exceed 1, got {F}")
        self.F = F
        self.lam = 1.0
        self.x_c: Optional[np.ndarray] = None
        self.f_c: Optional[int] = None

    def _uses_frequencies(self) -> bool:
        return False

    def _key(self, y: int) -> int:
        return y

    def _mutant_count(self, count: int) -> int:
        return count

    def _count_participants(self, f_best_mutant: int, offspring_values: List[int]):
        pass

    def initialize(self):
        self.x_c = random_bits(self.rng, self.s)
        self.f_c = self.evaluate(self.x_c)

    def _iterate(self):
        s = self.s
        count = offspring_count(self.lam, s)

        # Mutation phase: one flip count shared by all mutants
        ell = binomial_gt0(self.rng, s, self.lam / s)
        x_m, f_m, k_m = None, None, None
        for _ in range(self._mutant_count(count)):
            y = mutate_exact(self.rng, self.x_c, ell)
            f_y = self.evaluate(y)
            k_y = self._key(f_y)
            if x_m is None or k_y < k_m:
                x_m, f_m, k_m = y, f_y, k_y

        # Crossover phase: clones of a parent keep their known value
        c = 1.0 / self.lam
        offspring = []
        for _ in range(count):
            y = crossover(self.rng, self.x_c, x_m, c)
            if np.array_equal(y, self.x_c) or np.array_equal(y, x_m):
                continue
            offspring.append((y, self.evaluate(y)))

        self._count_participants(f_m, [f_y for _, f_y in offspring])

        x_n, f_n = x_m, f_m
        k_n = self._key(f_n)
        for y, f_y in offspring:
            k_y = self._key(f_y)
            if k_y < k_n:
                x_n, f_n, k_n = y, f_y, k_y

        k_c = self._key(self.f_c)
        if k_n < k_c:
            self.lam = max(1.0, self.lam / self.F)
        else:
            self.lam = min(float(s), self.lam * self.F ** 0.25)

        if k_n <= k_c:
            self.x_c, self.f_c = x_n, f_n


class SAFGA(SAGA):
    """
    Self-adjusting (1+(λ,λ)) GA on encounter frequencies.

    The best mutant is picked by the frequencies as they stand. Once the
    crossover offspring are evaluated, the table counts f(x_c), f(x') and
    each evaluated offspring; crossover selection, λ adaptation and
    acceptance then compare the updated frequencies.
    """

    name = "safga"

    def __init__(
        self,
        problem: Problem,
        rng: np.random.Generator,
        evaluator: Evaluator,
        F: float = 1.5,
    ):
        super().__init__(problem, rng, evaluator, F)
        self.table = FrequencyTable(problem.upper_bound)

    def _uses_frequencies(self) -> bool:
        return True

    def _key(self, y: int) -> int:
        if self._uses_frequencies():
            return self.table.fitness(y)
        return y

    def _count_participants(self, f_best_mutant: int, offspring_values: List[int]):
        if not self._uses_frequencies():
            return
        self.table.increment(self.f_c)
        self.table.increment(f_best_mutant)
        for f_y in offspring_values:
            self.table.increment(f_y)

    def frequency_tables(self) -> List[FrequencyTable]:
        return [self.table]


PURE = "pure"
FFA = "ffa"


class SAFGAP(SAFGA):
    """
    Hybrid of the SAGA and the SAFGA sharing λ and one frequency table.

    Runs in PURE mode (the plain SAGA, table untouched) until the iteration
    after the one in which round(λ) reached s, then in FFA mode until the
    best-so-far objective value strictly improves. The saturation check is
    repeated on the return to PURE, so a λ still at s switches back to FFA
    after one PURE iteration. With round(λ) = s only a single mutant is
    created, since every mutant would be the complement of x_c.
    """

    name = "safgap"

    def __init__(
        self,
        problem: Problem,
        rng: np.random.Generator,
        evaluator: Evaluator,
        F: float = 1.5,
    ):
        super().__init__(problem, rng, evaluator, F)
        self.mode = PURE
        self.reached_s = False
        self.switches = 0

    def _uses_frequencies(self) -> bool:
        return self.mode == FFA

    def _mutant_count(self, count: int) -> int:
        return 1 if count == self.s else count

    def _switch(self, mode: str):
        logger.debug(
            f"{self.name} on {self.problem}: {self.mode} -> {mode} after {self.evaluator.fes} FEs"
        )
        self.mode = mode
        self.switches += 1

    def counters(self) -> Dict[str, int]:
        return {"switches": self.switches}

    def _iterate(self):
        best_before = self.evaluator.best_f
        super()._iterate()
        if self.mode == FFA:
            if self.evaluator.best_f < best_before:
                self._switch(PURE)
                self.reached_s = offspring_count(self.lam, self.s) == self.s
        elif self.reached_s:
            self._switch(FFA)
            self.reached_s = False
        else:
            self.reached_s = offspring_count(self.lam, self.s) == self.s
