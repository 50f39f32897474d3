import pytest

from core.operators import bits_from_string
from core.process import Evaluator, Terminated
from problems.registry import OneMax


def test_counts_evaluations_and_tracks_best() -> None:
    evaluator = Evaluator(OneMax(4), budget=10)
    assert evaluator.evaluate(bits_from_string("0000")) == 4
    assert evaluator.evaluate(bits_from_string("0110")) == 2
    assert evaluator.evaluate(bits_from_string("0001")) == 3
    assert evaluator.fes == 3
    assert evaluator.best_f == 2
    assert evaluator.improvements == 2
    assert not evaluator.success


def test_budget_is_enforced() -> None:
    evaluator = Evaluator(OneMax(4), budget=2)
    evaluator.evaluate(bits_from_string("0000"))
    evaluator.evaluate(bits_from_string("0000"))
    assert evaluator.should_terminate()
    with pytest.raises(Terminated):
        evaluator.evaluate(bits_from_string("1111"))
    assert evaluator.fes == 2
    assert evaluator.used_fes == 2


def test_records_first_optimal_evaluation() -> None:
    evaluator = Evaluator(OneMax(3), budget=100)
    evaluator.evaluate(bits_from_string("010"))
    evaluator.evaluate(bits_from_string("111"))
    assert evaluator.success
    assert evaluator.success_fes == 2
    with pytest.raises(Terminated):
        evaluator.evaluate(bits_from_string("111"))


def test_can_continue_past_the_optimum() -> None:
    seen = []
    evaluator = Evaluator(
        OneMax(3), budget=3, stop_at_optimum=False, observer=lambda x, y: seen.append(y)
    )
    for text in ("111", "011", "001"):
        evaluator.evaluate(bits_from_string(text))
    assert seen == [0, 1, 2]
    assert evaluator.success_fes == 1
    assert evaluator.used_fes == 1


def test_rejects_empty_budget() -> None:
    with pytest.raises(ValueError):
        Evaluator(OneMax(3), budget=0)
