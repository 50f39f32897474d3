"""
MAX-SAT Objective

The objective of a MAX-SAT instance is the number of clauses that are false
under an assignment; 0 means the formula is satisfied. Bit v-1 of the bit
string holds variable v.
"""

import logging
from typing import List

import numpy as np

from problems.registry import Problem
from sat.dimacs import CnfFormula

logger = logging.getLogger(__name__)

# Clause-to-variable ratio of the satisfiability phase transition
PHASE_TRANSITION_RATIO = 4.26


def maxsat_eval(formula: CnfFormula, x: np.ndarray) -> int:
    """
    Count the clauses of formula with no satisfied literal under x.

    Raises:
        ValueError: x does not have num_vars bits
    """
    if x.shape[0] != formula.num_vars:
        raise ValueError(
            f"Assignment has {x.shape[0]} bits but the formula has {formula.num_vars} variables"
        )
    unsatisfied = 0
    for clause in formula.clauses:
        if not any(x[abs(lit) - 1] == (lit > 0) for lit in clause):
            unsatisfied += 1
    return unsatisfied


class MaxSatProblem(Problem):
    """
    A CNF formula as a minimization problem with UB = number of clauses.
    """

    name = "maxsat"

    def __init__(self, formula: CnfFormula, instance_name: str = ""):
        super().__init__(formula.num_vars, formula.num_clauses)
        self.formula = formula
        self.instance_name = instance_name

        # Flattened literal arrays for vectorized evaluation
        lengths = [len(clause) for clause in formula.clauses]
        literals = np.fromiter(
            (lit for clause in formula.clauses for lit in clause),
            dtype=np.int64,
            count=sum(lengths),
        )
        self._variables = np.abs(literals) - 1
        self._polarity = literals > 0
        self._starts = np.concatenate(([0], np.cumsum(lengths)[:-1])).astype(np.int64)

    def evaluate(self, x: np.ndarray) -> int:
        satisfied = x[self._variables] == self._polarity
        clause_ok = np.logical_or.reduceat(satisfied, self._starts)
        return self.upper_bound - int(np.count_nonzero(clause_ok))

    @property
    def instance(self) -> str:
        return self.instance_name or f"s={self.scale},B={self.upper_bound}"


def random_3sat(
    num_vars: int,
    rng: np.random.Generator,
    num_clauses: int = 0,
    planted: bool = True,
) -> CnfFormula:
    """
    Uniform random 3-SAT formula.

    Each clause has three distinct variables with random signs. With
    planted=True a hidden assignment is drawn first and clauses it violates
    are redrawn, so the formula is satisfiable.

    Args:
        num_vars: Number of variables, at least 3
        rng: Random generator
        num_clauses: Clause count; 0 means round(4.26 * num_vars)
        planted: Guarantee satisfiability

    Returns:
        The formula
    """
    if num_vars < 3:
        raise ValueError(f"3-SAT needs at least 3 variables, got {num_vars}")
    if num_clauses <= 0:
        num_clauses = int(round(PHASE_TRANSITION_RATIO * num_vars))

    hidden = rng.integers(0, 2, size=num_vars).astype(bool) if planted else None
    clauses: List[List[int]] = []
    while len(clauses) < num_clauses:
        variables = rng.choice(num_vars, size=3, replace=False)
        signs = rng.integers(0, 2, size=3).astype(bool)
        if hidden is not None and not np.any(hidden[variables] == signs):
            continue
        clauses.append([int(v + 1) if sign else -int(v + 1) for v, sign in zip(variables, signs)])

    logger.debug(f"Generated random 3-SAT formula with {num_vars} variables, {num_clauses} clauses")
    return CnfFormula(num_vars=num_vars, num_clauses=num_clauses, clauses=clauses)
