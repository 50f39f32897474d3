"""
Experiment Harness

This module expands an experiment spec into a grid of seeded runs, executes
them inline or on a worker pool, and returns the records in a stable order.
"""

import logging
from collections import defaultdict
from multiprocessing import Pool
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from algorithms.runner import ALGORITHMS, create_algorithm, options_from_config, run
from config import DEFAULT_CONFIG
from core.process import Evaluator
from core.rng import derive_seed, make_rng, tag_to_u64
from harness.records import RunRecord
from problems.registry import PROBLEMS, Problem, make_problem
from sat.dimacs import load_cnf_directory
from sat.maxsat import MaxSatProblem, random_3sat

logger = logging.getLogger(__name__)

MAXSAT = "maxsat"

# Generated 3-SAT instances per scale when no instance directory is given
DEFAULT_RANDOM_INSTANCES = 10


class ExperimentInterrupted(RuntimeError):
    """The experiment was stopped early; records holds the completed runs."""

    def __init__(self, records: List[RunRecord]):
        self.records = records
        super().__init__(f"Experiment interrupted after {len(records)} completed runs")


class ProblemSpec(BaseModel):
    """One problem of the grid: a name, its scales and extra parameters."""

    name: str
    scales: List[int] = Field(default_factory=list)
    params: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("name")
    @classmethod
    def check_name(cls, name: str) -> str:
        if name != MAXSAT and name not in PROBLEMS:
            raise ValueError(f"Unknown problem {name!r}; known: {', '.join(list(PROBLEMS) + [MAXSAT])}")
        return name

    @field_validator("scales")
    @classmethod
    def check_scales(cls, scales: List[int]) -> List[int]:
        if any(s < 1 for s in scales):
            raise ValueError(f"Scales must be positive, got {scales}")
        return scales


class ExperimentSpec(BaseModel):
    """
    Full description of an experiment grid.

    Every algorithm runs `runs` times on every (problem, scale, params)
    cell. Seeds depend on the base seed, the cell and the run index only,
    so all algorithms see the same seeds on a cell.
    """

    algorithms: List[str]
    problems: List[ProblemSpec]
    runs: int = Field(ge=1)
    budget: int = Field(ge=1)
    base_seed: int = 0
    instance_dir: Optional[str] = None
    options: Dict[str, Any] = Field(default_factory=lambda: options_from_config(DEFAULT_CONFIG))
    dump_dir: Optional[str] = None

    @field_validator("algorithms")
    @classmethod
    def check_algorithms(cls, algorithms: List[str]) -> List[str]:
        if not algorithms:
            raise ValueError("At least one algorithm is required")
        unknown = [a for a in algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(f"Unknown algorithms {unknown}; known: {', '.join(ALGORITHMS)}")
        return algorithms


class RunTask(NamedTuple):
    algorithm: str
    problem: Problem
    seed: int
    budget: int
    options: Dict[str, Any]
    dump_dir: Optional[str]


class Cell(NamedTuple):
    """Seeds of one problem setting, shared by all algorithms."""

    problem: str
    instance: str
    scale: int
    problems: List[Problem]
    seeds: List[int]


def _theory_cells(spec: ExperimentSpec, problem_spec: ProblemSpec) -> List[Cell]:
    cells = []
    for s in problem_spec.scales:
        problem = make_problem(problem_spec.name, s, problem_spec.params)
        key = (problem.name, problem.instance)
        seeds = [derive_seed(spec.base_seed, key, i) for i in range(spec.runs)]
        cells.append(Cell(problem.name, problem.instance, s, [problem] * spec.runs, seeds))
    return cells


def _maxsat_instances(spec: ExperimentSpec, problem_spec: ProblemSpec) -> List[MaxSatProblem]:
    if spec.instance_dir:
        return [MaxSatProblem(formula, name) for name, formula in load_cnf_directory(spec.instance_dir)]

    if not problem_spec.scales:
        raise ValueError("maxsat needs --cnf-dir or at least one scale for generated instances")
    count = int(problem_spec.params.get("instances", DEFAULT_RANDOM_INSTANCES))
    instances = []
    for s in problem_spec.scales:
        for k in range(count):
            rng = make_rng(spec.base_seed ^ tag_to_u64(f"rand3sat|{s}|{k}"))
            instances.append(MaxSatProblem(random_3sat(s, rng), f"rand3sat-{s}-{k:03d}"))
    logger.info(f"Generated {len(instances)} planted random 3-SAT instances")
    return instances


def _maxsat_cells(spec: ExperimentSpec, problem_spec: ProblemSpec) -> List[Cell]:
    by_scale: Dict[int, List[MaxSatProblem]] = defaultdict(list)
    for problem in _maxsat_instances(spec, problem_spec):
        by_scale[problem.scale].append(problem)
    if problem_spec.scales:
        by_scale = {s: by_scale[s] for s in problem_spec.scales if s in by_scale}
    if not by_scale:
        raise ValueError(f"No MAX-SAT instances match scales {problem_spec.scales}")

    cells = []
    for s in sorted(by_scale):
        pool = by_scale[s]
        key = (MAXSAT, f"s={s}")
        # Round-robin over the instance files
        problems = [pool[i % len(pool)] for i in range(spec.runs)]
        seeds = [derive_seed(spec.base_seed, key, i) for i in range(spec.runs)]
        cells.append(Cell(MAXSAT, f"s={s}", s, problems, seeds))
    return cells


def _check_options(spec: ExperimentSpec, cells: List[Cell]):
    # Rates such as p_factor / s depend on the scale
    for algorithm in spec.algorithms:
        for cell in cells:
            problem = cell.problems[0]
            create_algorithm(algorithm, problem, make_rng(0), Evaluator(problem, 1), spec.options)


def plan_cells(spec: ExperimentSpec) -> List[Cell]:
    """
    Build every problem instance and resolve every seed of the grid.

    Raises:
        ValueError: invalid problem parameters, algorithm options or instance
            directory
    """
    cells = []
    for problem_spec in spec.problems:
        if problem_spec.name == MAXSAT:
            cells.extend(_maxsat_cells(spec, problem_spec))
        else:
            cells.extend(_theory_cells(spec, problem_spec))
    _check_options(spec, cells)
    return cells


def plan_tasks(spec: ExperimentSpec, cells: List[Cell]) -> List[RunTask]:
    tasks = []
    for algorithm in spec.algorithms:
        for cell in cells:
            for problem, seed in zip(cell.problems, cell.seeds):
                tasks.append(
                    RunTask(algorithm, problem, seed, spec.budget, spec.options, spec.dump_dir)
                )
    return tasks


def _run_task(task: RunTask) -> RunRecord:
    return run(
        task.algorithm,
        task.problem,
        task.seed,
        task.budget,
        options=task.options,
        dump_dir=task.dump_dir,
    )


class ExperimentRunner:
    """
    Executes experiment grids with the configured parallelism.
    """

    def __init__(self, config: Dict[str, Any]):
        """
        Initialize the runner.

        Args:
            config: Configuration dictionary (see config.DEFAULT_CONFIG)
        """
        self.config = config
        experiment = config.get("experiment", {})
        self.parallel = max(1, int(experiment.get("parallel", 1)))
        self.progress_every = max(1, int(experiment.get("progress_every", 100)))
        logger.info(f"Experiment Runner initialized with {self.parallel} worker(s)")

    def _report(self, done: int, total: int):
        if done % self.progress_every == 0 or done == total:
            logger.info(f"Completed {done}/{total} runs")

    def execute(self, spec: ExperimentSpec, cells: Optional[List[Cell]] = None) -> List[RunRecord]:
        """
        Run the full grid.

        Args:
            spec: Experiment grid
            cells: Cells from plan_cells(spec), built here when omitted

        Returns:
            One record per scheduled run, sorted by algorithm, problem,
            instance and seed

        Raises:
            ValueError: the grid cannot be built
            ExperimentInterrupted: stopped by Ctrl-C; carries finished runs
        """
        if cells is None:
            cells = plan_cells(spec)
        tasks = plan_tasks(spec, cells)
        total = len(tasks)
        logger.info(f"Executing {total} runs with budget {spec.budget} FEs")

        records: List[RunRecord] = []
        try:
            if self.parallel == 1:
                for task in tasks:
                    records.append(_run_task(task))
                    self._report(len(records), total)
            else:
                with Pool(processes=self.parallel) as pool:
                    for record in pool.imap_unordered(_run_task, tasks, chunksize=4):
                        records.append(record)
                        self._report(len(records), total)
        except KeyboardInterrupt:
            logger.warning(f"Interrupted with {len(records)}/{total} runs completed")
            raise ExperimentInterrupted(sorted(records, key=RunRecord.sort_key))

        return sorted(records, key=RunRecord.sort_key)


def execute(spec: ExperimentSpec, parallelism: int = 1, config: Optional[Dict[str, Any]] = None) -> List[RunRecord]:
    """Run spec with the given number of workers (see ExperimentRunner)."""
    config = dict(config or DEFAULT_CONFIG)
    config["experiment"] = {**config.get("experiment", {}), "parallel": parallelism}
    return ExperimentRunner(config).execute(spec)


def seed_table(cells: List[Cell]) -> List[Tuple[str, str, int, int, int]]:
    """(problem, instance, runs, first seed, last seed) per cell."""
    return [
        (cell.problem, cell.instance, len(cell.seeds), cell.seeds[0], cell.seeds[-1])
        for cell in cells
        if cell.seeds
    ]
