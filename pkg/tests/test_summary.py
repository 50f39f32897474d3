import io
import math

import pytest

from algorithms.runner import run
from harness.records import RunRecord
from problems.registry import OneMax
from stats.summary import (
    UNDEFINED,
    UndefinedStatisticError,
    cell_key,
    ert,
    exponent_t,
    exponent_table,
    format_value,
    mean_runtime,
    plot_data,
    problem_label,
    slowdown_ratio,
    slowdown_table,
    summarize,
    write_rows,
)


def rec(used_fes, success=True, algorithm="fea", problem="onemax", scale=10, instance=None, seed=0):
    return RunRecord(
        algorithm=algorithm,
        problem=problem,
        instance=instance or f"s={scale}",
        scale=scale,
        seed=seed,
        budget_fes=10**6,
        used_fes=used_fes,
        best_f=0 if success else 1,
        success=success,
    )


def test_ert_counts_failed_runs() -> None:
    assert ert([rec(100), rec(1000, success=False)]) == 1100
    assert ert([rec(100), rec(300)]) == 200
    assert math.isinf(ert([rec(5, success=False)]))


def test_mean_runtime_ignores_failures() -> None:
    assert mean_runtime([rec(100), rec(300), rec(999, success=False)]) == 200
    assert mean_runtime([rec(999, success=False)]) is None


def test_statistics_reject_empty_or_mixed_cells() -> None:
    with pytest.raises(ValueError):
        ert([])
    with pytest.raises(ValueError):
        mean_runtime([rec(10), rec(10, algorithm="ea")])


def test_maxsat_instances_share_a_cell() -> None:
    a = rec(10, problem="maxsat", scale=20, instance="uf20-01.cnf")
    b = rec(20, problem="maxsat", scale=20, instance="uf20-02.cnf")
    assert cell_key(a) == cell_key(b) == ("fea", "maxsat", "s=20", 20)
    assert ert([a, b]) == 15


def test_slowdown_ratio() -> None:
    assert slowdown_ratio([rec(500), rec(500)], [rec(500, algorithm="ea")], 9) == pytest.approx(0.1)
    assert slowdown_ratio([rec(1000)], [rec(10, algorithm="ea")], 9) == pytest.approx(10.0)
    with pytest.raises(UndefinedStatisticError):
        slowdown_ratio([rec(1000, success=False)], [rec(10, algorithm="ea")], 9)
    with pytest.raises(ValueError):
        slowdown_ratio([], [rec(10)], 9)


def test_slowdown_table_pairs_cells() -> None:
    records = [
        rec(550, scale=10),
        rec(50, algorithm="ea", scale=10),
        rec(400, scale=20, instance="s=20"),
        rec(40, algorithm="ea", scale=20, success=False),
        rec(5, scale=30),
    ]
    assert slowdown_table(records, "fea", "ea") == [
        ("fea:ea", "onemax", 10, pytest.approx(1.0)),
        ("fea:ea", "onemax", 20, None),
    ]


def test_exponent() -> None:
    records = [rec(1000, scale=10), rec(200, scale=10), rec(10000, scale=100)]
    assert exponent_t(records) == pytest.approx(3.0)
    with pytest.raises(UndefinedStatisticError):
        exponent_t(records + [rec(5, scale=100, success=False)])
    with pytest.raises(ValueError):
        exponent_t([])
    with pytest.raises(ValueError):
        exponent_t([rec(1, scale=1)])


def test_exponent_table_marks_failures() -> None:
    records = [
        rec(100, scale=10),
        rec(100, algorithm="ea", scale=10),
        rec(1000, algorithm="ea", scale=10, success=False),
    ]
    assert exponent_table(records) == [("ea", "onemax", None), ("fea", "onemax", pytest.approx(2.0))]


def test_summaries_and_plot_rows() -> None:
    records = [
        rec(30, scale=20, instance="s=20,w=3", problem="jump"),
        rec(10, scale=10, instance="s=10,w=3", problem="jump"),
        rec(20, scale=10, instance="s=10,w=3", problem="jump", success=False),
        rec(7, algorithm="ea", scale=10),
    ]
    summaries = summarize(records)
    assert [s.key() for s in summaries] == [
        ("ea", "onemax", "s=10", 10),
        ("fea", "jump", "s=10,w=3", 10),
        ("fea", "jump", "s=20,w=3", 20),
    ]
    assert summaries[1].success_rate == 0.5
    assert summaries[1].ert == 30
    assert summaries[1].max_used_fes == 20
    assert plot_data(summaries, "success") == [
        ("ea", "onemax", 10, "success", 1.0),
        ("fea", "jump[w=3]", 10, "success", 0.5),
        ("fea", "jump[w=3]", 20, "success", 1.0),
    ]
    with pytest.raises(ValueError):
        plot_data(summaries, "median")


def test_problem_labels() -> None:
    assert problem_label("jump", "s=32,w=6") == "jump[w=6]"
    assert problem_label("nqueens", "s=64,n=8") == "nqueens[n=8]"
    assert problem_label("onemax", "s=32") == "onemax"


def test_rendering() -> None:
    assert format_value(None) == UNDEFINED
    assert format_value(math.inf) == "inf"
    assert format_value(0.1) == "0.1"
    assert format_value(12) == "12"
    sink = io.StringIO()
    write_rows(["a", "b"], [("x", None), ("y", 2.5)], sink)
    assert sink.getvalue() == "a,b\nx,∅\ny,2.5\n"


@pytest.mark.slow
@pytest.mark.parametrize("s", [64, 128])
def test_fea_slowdown_on_onemax(s) -> None:
    fea = [run("fea", OneMax(s), seed, 10**7) for seed in range(100)]
    ea = [run("ea", OneMax(s), seed, 10**7) for seed in range(100)]
    assert 0.02 < slowdown_ratio(fea, ea, s) < 1.0
