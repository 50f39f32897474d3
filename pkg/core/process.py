"""
Evaluation Accounting

The evaluator is the only path from an algorithm to the objective function.
It counts function evaluations (FEs), enforces the budget, and keeps the
best-so-far solution. Search decisions never read the best-so-far record.
"""

import logging
from typing import Callable, Optional

import numpy as np

logger = logging.getLogger(__name__)


class Terminated(Exception):
    """Raised by the evaluator when no further evaluation is allowed."""


class Evaluator:
    """
    Budget-enforcing wrapper around a problem.
    """

    def __init__(
        self,
        problem,
        budget: int,
        stop_at_optimum: bool = True,
        observer: Optional[Callable[[np.ndarray, int], None]] = None,
    ):
        """
        Initialize the evaluator.

        Args:
            problem: Problem exposing evaluate(x) -> int
            budget: Maximum number of FEs, at least 1
            stop_at_optimum: Refuse further evaluations once objective 0 was seen
            observer: Optional callback receiving every evaluated (x, f(x))
        """
        if budget < 1:
            raise ValueError(f"Budget must be at least 1 FE, got {budget}")
        self.problem = problem
        self.budget = int(budget)
        self.stop_at_optimum = stop_at_optimum
        self.observer = observer

        self.fes = 0
        self.best_x: Optional[np.ndarray] = None
        self.best_f: Optional[int] = None
        self.success_fes: Optional[int] = None
        self.improvements = 0

    def should_terminate(self) -> bool:
        """True when the budget is used up or, if enabled, the optimum was found."""
        if self.fes >= self.budget:
            return True
        return self.stop_at_optimum and self.success_fes is not None

    def evaluate(self, x: np.ndarray) -> int:
        """
        Evaluate x, charging exactly one FE.

        Raises:
            Terminated: if the run must not evaluate anymore
        """
        if self.should_terminate():
            raise Terminated()
        self.fes += 1
        y = self.problem.evaluate(x)
        if self.best_f is None or y < self.best_f:
            self.best_f = y
            self.best_x = x.copy()
            self.improvements += 1
            if y == 0 and self.success_fes is None:
                self.success_fes = self.fes
                logger.debug(f"Optimum of {self.problem} reached after {self.fes} FEs")
        if self.observer is not None:
            self.observer(x, y)
        return y

    @property
    def success(self) -> bool:
        return self.success_fes is not None

    @property
    def used_fes(self) -> int:
        """FEs at the first optimal evaluation, else the FEs consumed."""
        if self.success_fes is not None:
            return self.success_fes
        return self.fes
