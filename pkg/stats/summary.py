"""
Run Statistics

Summary statistics over run records: mean runtime of successful runs,
success rate, expected running time (ERT), the slowdown of an FFA-based
algorithm against its pure counterpart, and the worst-case runtime
exponent t with runtime <= s^t.
"""

import csv
import logging
import math
from collections import defaultdict
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

import numpy as np
from pydantic import BaseModel, model_validator

from harness.records import RunRecord

logger = logging.getLogger(__name__)

# Rendered for statistics that are undefined because some run failed
UNDEFINED = "∅"

PLOT_HEADER = ["algorithm", "problem", "scale", "metric", "value"]
PLOT_METRICS = ("mean", "ert", "success")

CellKey = Tuple[str, str, str, int]


class UndefinedStatisticError(ValueError):
    """The statistic needs every run to be successful."""


class CellSummary(BaseModel):
    algorithm: str
    problem: str
    setting: str
    scale: int
    n_runs: int
    n_success: int
    mean_used_fes_success: Optional[float]
    ert: float
    max_used_fes: int

    @model_validator(mode="after")
    def check_summary(self):
        if not 0 <= self.n_success <= self.n_runs:
            raise ValueError(f"n_success={self.n_success} outside [0, n_runs={self.n_runs}]")
        if math.isinf(self.ert) != (self.n_success == 0):
            raise ValueError("ert must be infinite exactly when no run succeeded")
        return self

    @property
    def success_rate(self) -> float:
        return self.n_success / self.n_runs

    def key(self) -> CellKey:
        return (self.algorithm, self.problem, self.setting, self.scale)


def cell_key(record: RunRecord) -> CellKey:
    """
    Group key of a record. MAX-SAT runs of one scale form a single cell
    across instance files.
    """
    setting = f"s={record.scale}" if record.problem == "maxsat" else record.instance
    return (record.algorithm, record.problem, setting, record.scale)


def group_cells(records: Iterable[RunRecord]) -> Dict[CellKey, List[RunRecord]]:
    cells: Dict[CellKey, List[RunRecord]] = defaultdict(list)
    for record in records:
        cells[cell_key(record)].append(record)
    return dict(cells)


def _check_cell(records: Sequence[RunRecord]):
    if not records:
        raise ValueError("Statistic of an empty cell")
    keys = {cell_key(r) for r in records}
    if len(keys) > 1:
        raise ValueError(f"Records span {len(keys)} cells: {sorted(keys)}")


def ert(records: Sequence[RunRecord]) -> float:
    """
    Expected running time: FEs of all runs, failed ones included, divided
    by the number of successful runs; infinite without success.
    """
    _check_cell(records)
    n_success = sum(1 for r in records if r.success)
    if n_success == 0:
        return math.inf
    return sum(r.used_fes for r in records) / n_success


def mean_runtime(records: Sequence[RunRecord]) -> Optional[float]:
    """Mean FEs of the successful runs, None if there are none."""
    _check_cell(records)
    successful = [r.used_fes for r in records if r.success]
    if not successful:
        return None
    return float(np.mean(successful))


def slowdown_ratio(ffa_records: Sequence[RunRecord], pure_records: Sequence[RunRecord], s: int) -> float:
    """
    mean(FFA runtime) / ((s + 1) * mean(pure runtime)).

    Raises:
        ValueError: an empty cell
        UndefinedStatisticError: a failed run in either cell
    """
    if not ffa_records or not pure_records:
        raise ValueError("Slowdown needs two non-empty cells")
    if not all(r.success for r in ffa_records) or not all(r.success for r in pure_records):
        raise UndefinedStatisticError("Slowdown is undefined when some runs failed")
    ffa_mean = float(np.mean([r.used_fes for r in ffa_records]))
    pure_mean = float(np.mean([r.used_fes for r in pure_records]))
    return ffa_mean / ((s + 1) * pure_mean)


def exponent_t(records: Iterable[RunRecord]) -> float:
    """
    Smallest t with worst runtime <= s^t at every scale, i.e. the maximum
    over scales of log_s(max used FEs).

    Raises:
        ValueError: no records, or a scale below 2
        UndefinedStatisticError: some run failed
    """
    worst: Dict[int, int] = {}
    for record in records:
        if not record.success:
            raise UndefinedStatisticError(
                f"{record.algorithm} failed on {record.problem} {record.instance} (seed {record.seed})"
            )
        worst[record.scale] = max(worst.get(record.scale, 0), record.used_fes)
    if not worst:
        raise ValueError("Exponent of an empty record set")
    if min(worst) < 2:
        raise ValueError(f"Exponent needs scales >= 2, got {min(worst)}")
    return max(math.log(fes) / math.log(s) for s, fes in worst.items())


def summarize(records: Iterable[RunRecord]) -> List[CellSummary]:
    """One summary per cell, sorted by cell key."""
    summaries = []
    for key, cell in sorted(group_cells(records).items()):
        algorithm, problem, setting, scale = key
        summaries.append(
            CellSummary(
                algorithm=algorithm,
                problem=problem,
                setting=setting,
                scale=scale,
                n_runs=len(cell),
                n_success=sum(1 for r in cell if r.success),
                mean_used_fes_success=mean_runtime(cell),
                ert=ert(cell),
                max_used_fes=max(r.used_fes for r in cell),
            )
        )
    return summaries


def problem_label(problem: str, setting: str) -> str:
    """'jump' + 's=32,w=6' -> 'jump[w=6]'; settings without extra parameters give the bare name."""
    extra = [part for part in setting.split(",") if part and not part.startswith("s=")]
    return f"{problem}[{','.join(extra)}]" if extra else problem


def plot_data(summaries: Iterable[CellSummary], metric: str) -> List[Tuple[str, str, int, str, Optional[float]]]:
    """
    Rows (algorithm, problem label, scale, metric, value) sorted by
    algorithm, problem label and ascending scale.
    """
    if metric not in PLOT_METRICS:
        raise ValueError(f"Unknown metric {metric!r}; use one of {PLOT_METRICS}")
    rows = []
    for summary in summaries:
        if metric == "mean":
            value = summary.mean_used_fes_success
        elif metric == "ert":
            value = summary.ert
        else:
            value = summary.success_rate
        rows.append((summary.algorithm, problem_label(summary.problem, summary.setting), summary.scale, metric, value))
    return sorted(rows, key=lambda row: (row[0], row[1], row[2]))


def slowdown_table(records: Iterable[RunRecord], ffa: str, pure: str) -> List[Tuple[str, str, int, Optional[float]]]:
    """
    Rows (pair, problem label, scale, ratio) for every cell run by both
    algorithms; ratio is None where some run failed.
    """
    cells = group_cells(records)
    rows = []
    for (algorithm, problem, setting, scale), ffa_cell in sorted(cells.items()):
        if algorithm != ffa:
            continue
        pure_cell = cells.get((pure, problem, setting, scale))
        if pure_cell is None:
            logger.warning(f"No {pure} runs for {problem} {setting}; skipped")
            continue
        try:
            ratio = slowdown_ratio(ffa_cell, pure_cell, scale)
        except UndefinedStatisticError:
            ratio = None
        rows.append((f"{ffa}:{pure}", problem_label(problem, setting), scale, ratio))
    return rows


def exponent_table(records: Iterable[RunRecord]) -> List[Tuple[str, str, Optional[float]]]:
    """Rows (algorithm, problem, t) over all scales and settings; t is None on any failure."""
    groups: Dict[Tuple[str, str], List[RunRecord]] = defaultdict(list)
    for record in records:
        groups[(record.algorithm, record.problem)].append(record)
    rows = []
    for (algorithm, problem), group in sorted(groups.items()):
        try:
            t = exponent_t(group)
        except UndefinedStatisticError:
            t = None
        rows.append((algorithm, problem, t))
    return rows


def format_value(value: Any) -> str:
    """Render a table cell: None as ∅, floats with ten significant digits."""
    if value is None:
        return UNDEFINED
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def format_row(row: Sequence) -> List[str]:
    return [format_value(cell) for cell in row]


def write_rows(header: List[str], rows: Iterable[Sequence], sink: TextIO):
    """CSV with a header row; None cells become ∅."""
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(format_row(row))


SUMMARY_HEADER = [
    "algorithm",
    "problem",
    "setting",
    "scale",
    "n_runs",
    "n_success",
    "mean_used_fes_success",
    "ert",
    "max_used_fes",
]


def summary_rows(summaries: Iterable[CellSummary]) -> List[Tuple]:
    return [tuple(getattr(s, field) for field in SUMMARY_HEADER) for s in summaries]
