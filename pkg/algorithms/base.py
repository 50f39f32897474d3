"""
Algorithm Base

Every optimizer works on a single problem through an Evaluator and draws
all randomness from the Generator it was built with. Algorithms keep their
own state between steps; the runner drives them until the evaluator stops.
"""

import logging
from abc import ABC, abstractmethod
from typing import Dict, List, Tuple

import numpy as np

from core.process import Evaluator
from ffa.frequency_table import FrequencyTable
from problems.registry import Problem

logger = logging.getLogger(__name__)


class Algorithm(ABC):
    """
    Base class for the pure and FFA-based optimizers.
    """

    name: str = ""
    # Keyword options accepted by the constructor
    option_names: Tuple[str, ...] = ()

    def __init__(self, problem: Problem, rng: np.random.Generator, evaluator: Evaluator):
        """
        Bind the algorithm to a problem.

        Args:
            problem: Problem to minimize
            rng: The run's random generator
            evaluator: Budget-enforcing evaluator for problem
        """
        self.problem = problem
        self.s = problem.scale
        self.rng = rng
        self.evaluator = evaluator

    def evaluate(self, x: np.ndarray) -> int:
        return self.evaluator.evaluate(x)

    @abstractmethod
    def initialize(self):
        """Create and evaluate the initial solution(s)."""

    @abstractmethod
    def _iterate(self):
        """One main-loop iteration."""

    def step(self) -> int:
        """
        Run one iteration.

        Returns:
            FEs consumed by the iteration

        Raises:
            Terminated: the evaluator refused an evaluation mid-iteration
        """
        start = self.evaluator.fes
        self._iterate()
        return self.evaluator.fes - start

    def frequency_tables(self) -> List[FrequencyTable]:
        """Frequency tables owned by the run; empty for pure algorithms."""
        return []

    def counters(self) -> Dict[str, int]:
        """Algorithm-specific counts reported when the run ends."""
        return {}
