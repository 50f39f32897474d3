"""
Reproduction Scenarios

Canned experiments that check published runtime figures and the
invariance of the FFA-based algorithms under injective transformations of
the objective function. Each scenario returns a verdict and a table of the
measured values.
"""

import logging
import math
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from algorithms.runner import options_from_config, trace
from harness.experiment import ExperimentSpec, ProblemSpec, execute
from problems.registry import Jump, OneMax, Trap
from stats.summary import summarize

logger = logging.getLogger(__name__)

TOLERANCE = 0.10


class ScenarioResult(BaseModel):
    name: str
    passed: bool
    headers: List[str]
    rows: List[Tuple[Any, ...]]


class Scenario(BaseModel):
    name: str
    description: str
    check: Callable[[Dict[str, Any]], ScenarioResult]


def _mean_runtime_scenario(
    name: str,
    algorithm: str,
    problem: str,
    scale: int,
    runs: int,
    target: float,
    option_overrides: Optional[Dict[str, Any]] = None,
) -> Callable[[Dict[str, Any]], ScenarioResult]:
    def check(config: Dict[str, Any]) -> ScenarioResult:
        options = options_from_config(config)
        options.update(option_overrides or {})
        spec = ExperimentSpec(
            algorithms=[algorithm],
            problems=[ProblemSpec(name=problem, scales=[scale])],
            runs=runs,
            budget=config["repro"]["budget"],
            base_seed=config["experiment"]["base_seed"],
            options=options,
        )
        records = execute(spec, config["experiment"]["parallel"], config)
        summary = summarize(records)[0]
        mean = summary.mean_used_fes_success
        passed = (
            summary.n_success == summary.n_runs
            and mean is not None
            and abs(mean - target) <= TOLERANCE * target
        )
        return ScenarioResult(
            name=name,
            passed=passed,
            headers=["algorithm", "problem", "s", "runs", "success", "mean FEs", "target", "band"],
            rows=[
                (
                    algorithm,
                    problem,
                    scale,
                    summary.n_runs,
                    summary.n_success,
                    mean,
                    target,
                    f"[{target * (1 - TOLERANCE):.0f}, {target * (1 + TOLERANCE):.0f}]",
                )
            ],
        )

    return check


TRACE_ALGORITHMS = ("fea", "gfga", "safga")
TRACE_SEEDS = 20
TRACE_SCALE = 32
TRACE_JUMP_WIDTH = 6
TRACE_FES = 2000


def _trace_invariance(config: Dict[str, Any]) -> ScenarioResult:
    options = options_from_config(config)
    base = config["experiment"]["base_seed"]
    problems = (OneMax(TRACE_SCALE), Trap(TRACE_SCALE), Jump(TRACE_SCALE, TRACE_JUMP_WIDTH))
    rows = []
    for algorithm in TRACE_ALGORITHMS:
        equal = 0
        for index in range(TRACE_SEEDS):
            seed = base + index
            traces = [trace(algorithm, problem, seed, TRACE_FES, options) for problem in problems]
            if all(t == traces[0] for t in traces[1:]):
                equal += 1
            else:
                logger.warning(f"{algorithm}: traces differ for seed {seed}")
        rows.append((algorithm, TRACE_SEEDS, equal))
    return ScenarioResult(
        name="trace-invariance",
        passed=all(equal == TRACE_SEEDS for _, _, equal in rows),
        headers=["algorithm", "seeds", "identical on onemax/trap/jump"],
        rows=rows,
    )


TWOMAX_ALGORITHMS = ("fea", "gfga", "eafea")
TWOMAX_SCALES = (32, 64, 128)
TWOMAX_RUNS = 71


def _twomax(config: Dict[str, Any]) -> ScenarioResult:
    spec = ExperimentSpec(
        algorithms=list(TWOMAX_ALGORITHMS),
        problems=[ProblemSpec(name="twomax", scales=list(TWOMAX_SCALES))],
        runs=TWOMAX_RUNS,
        budget=config["repro"]["budget"],
        base_seed=config["experiment"]["base_seed"],
        options=options_from_config(config),
    )
    records = execute(spec, config["experiment"]["parallel"], config)
    rows = []
    passed = True
    for summary in summarize(records):
        limit = summary.scale ** 2 * math.log(summary.scale)
        ok = (
            summary.n_success == summary.n_runs
            and summary.mean_used_fes_success is not None
            and summary.mean_used_fes_success < limit
        )
        passed = passed and ok
        rows.append(
            (summary.algorithm, summary.scale, summary.n_success, summary.n_runs, summary.mean_used_fes_success, limit)
        )
    return ScenarioResult(
        name="twomax-fea",
        passed=passed,
        headers=["algorithm", "s", "success", "runs", "mean FEs", "s^2 ln s"],
        rows=rows,
    )


SCENARIOS: Dict[str, Scenario] = {
    scenario.name: scenario
    for scenario in (
        Scenario(
            name="onemax-saga-5000",
            description="SAGA on OneMax s=5000, 100 runs, mean 35590 FEs +-10%",
            check=_mean_runtime_scenario("onemax-saga-5000", "saga", "onemax", 5000, 100, 35590.0),
        ),
        Scenario(
            name="onemax-gga-5000",
            description="GGA with p=0.773581/s on OneMax s=5000, 100 runs, mean 38502 FEs +-10%",
            check=_mean_runtime_scenario(
                "onemax-gga-5000", "gga", "onemax", 5000, 100, 38502.0, {"p_factor": 0.773581}
            ),
        ),
        Scenario(
            name="leadingones-saga-100",
            description="SAGA on LeadingOnes s=100, 500 runs, mean 14980 FEs +-10%",
            check=_mean_runtime_scenario("leadingones-saga-100", "saga", "leadingones", 100, 500, 14980.0),
        ),
        Scenario(
            name="trace-invariance",
            description="FEA, GFGA and SAFGA visit the same strings on OneMax, Trap and Jump (s=32, w=6), 20 seeds",
            check=_trace_invariance,
        ),
        Scenario(
            name="twomax-fea",
            description="FEA, GFGA and EAFEA solve TwoMax s in {32, 64, 128} in under s^2 ln s FEs, 71 runs",
            check=_twomax,
        ),
    )
}


def run_scenario(name: str, config: Dict[str, Any]) -> ScenarioResult:
    """
    Raises:
        ValueError: unknown scenario name
    """
    if name not in SCENARIOS:
        raise ValueError(f"Unknown scenario {name!r}; known: {', '.join(SCENARIOS)}")
    logger.info(f"Running scenario {name}")
    result = SCENARIOS[name].check(config)
    logger.info(f"Scenario {name}: {'PASS' if result.passed else 'FAIL'}")
    return result


def scenario_names() -> Sequence[str]:
    return list(SCENARIOS)
