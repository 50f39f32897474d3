"""
Algorithm Runner

Registry of the optimizers by command-line id, and the single-run drivers
used by the harness, the reproduction scenarios and the tests.
"""

import logging
import os
from typing import Any, Dict, List, Optional

import numpy as np

from algorithms.base import Algorithm
from algorithms.ea import EA, EAFEA, FEA
from algorithms.gga import GFGA, GGA
from algorithms.saga import SAFGA, SAFGAP, SAGA
from core.process import Evaluator, Terminated
from core.rng import make_rng
from harness.records import RunRecord
from problems.registry import Problem

logger = logging.getLogger(__name__)

ALGORITHMS: Dict[str, type] = {
    cls.name: cls for cls in (EA, FEA, GGA, GFGA, SAGA, SAFGA, EAFEA, SAFGAP)
}

# Algorithms deciding on frequencies alone
FFA_ONLY = ("fea", "gfga", "safga")

# Pure algorithm each FFA-based one is compared against
PURE_COUNTERPART = {
    "fea": "ea",
    "gfga": "gga",
    "safga": "saga",
    "eafea": "ea",
    "safgap": "saga",
}


def options_from_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Flatten the 'algorithms' config section into constructor options."""
    section = config.get("algorithms", {})
    return {
        "p_factor": section.get("gga", {}).get("p_factor"),
        "crossover_gate": section.get("gfga", {}).get("crossover_gate"),
        "overwrite": section.get("eafea", {}).get("overwrite"),
        "F": section.get("saga", {}).get("F"),
    }


def create_algorithm(
    algorithm_id: str,
    problem: Problem,
    rng: np.random.Generator,
    evaluator: Evaluator,
    options: Optional[Dict[str, Any]] = None,
) -> Algorithm:
    """
    Build a registered algorithm.

    Options the algorithm does not take, or that are None, are ignored.

    Raises:
        ValueError: unknown algorithm id
    """
    if algorithm_id not in ALGORITHMS:
        raise ValueError(f"Unknown algorithm {algorithm_id!r}; known: {', '.join(ALGORITHMS)}")
    cls = ALGORITHMS[algorithm_id]
    kwargs = {
        key: value
        for key, value in (options or {}).items()
        if key in cls.option_names and value is not None
    }
    return cls(problem, rng, evaluator, **kwargs)


def _drive(algorithm: Algorithm):
    try:
        algorithm.initialize()
        while not algorithm.evaluator.should_terminate():
            algorithm.step()
    except Terminated:
        pass


def run(
    algorithm_id: str,
    problem: Problem,
    seed: int,
    budget: int,
    options: Optional[Dict[str, Any]] = None,
    dump_dir: Optional[str] = None,
) -> RunRecord:
    """
    Execute one run until the optimum is evaluated or the budget is spent.

    Args:
        algorithm_id: Registry id, e.g. 'safga'
        problem: Problem to minimize
        seed: Seed of the run's generator
        budget: FE budget, at least 1
        options: Algorithm options (see options_from_config)
        dump_dir: If set, frequency tables are written there as CSV

    Returns:
        The run record
    """
    evaluator = Evaluator(problem, budget)
    algorithm = create_algorithm(algorithm_id, problem, make_rng(seed), evaluator, options)
    _drive(algorithm)
    counts = {"improvements": evaluator.improvements, **algorithm.counters()}
    logger.debug(
        f"{algorithm_id} on {problem} seed {seed}: {evaluator.used_fes} FEs, "
        + ", ".join(f"{value} {name}" for name, value in counts.items())
    )

    if dump_dir:
        for index, table in enumerate(algorithm.frequency_tables()):
            name = f"{algorithm_id}_{problem.name}_{problem.instance}_{seed}_{index}.csv"
            table.dump_csv(os.path.join(dump_dir, name.replace("/", "_")))

    return RunRecord(
        algorithm=algorithm_id,
        problem=problem.name,
        instance=problem.instance,
        scale=problem.scale,
        seed=seed,
        budget_fes=budget,
        used_fes=evaluator.used_fes,
        best_f=evaluator.best_f,
        success=evaluator.success,
    )


def trace(
    algorithm_id: str,
    problem: Problem,
    seed: int,
    fes: int,
    options: Optional[Dict[str, Any]] = None,
    stop_at_optimum: bool = False,
) -> List[bytes]:
    """
    Bit strings evaluated by one run, packed with np.packbits.

    By default the run makes exactly `fes` evaluations and does not stop
    at the optimum.
    """
    visited: List[bytes] = []

    def record(x: np.ndarray, y: int):
        visited.append(np.packbits(x).tobytes())

    evaluator = Evaluator(problem, fes, stop_at_optimum=stop_at_optimum, observer=record)
    algorithm = create_algorithm(algorithm_id, problem, make_rng(seed), evaluator, options)
    _drive(algorithm)
    return visited
