import csv

import pytest

from ffa.frequency_table import FrequencyRangeError, FrequencyTable


def test_fresh_table_is_zero() -> None:
    table = FrequencyTable(10)
    assert all(table.fitness(y) == 0 for y in range(11))
    assert table.total_increments == 0


def test_increments_accumulate() -> None:
    table = FrequencyTable(10)
    table.increment(5)
    assert table.fitness(5) == 1
    table.increment(5)
    table.increment(0)
    assert table.fitness(5) == 2
    assert table.fitness(0) == 1
    assert table.fitness(4) == 0
    assert table.total_increments == int(table.counts.sum()) == 3


def test_out_of_range_values_are_rejected() -> None:
    table = FrequencyTable(10)
    with pytest.raises(FrequencyRangeError):
        table.increment(11)
    with pytest.raises(FrequencyRangeError):
        table.fitness(-1)
    with pytest.raises(IndexError):
        table.increment(100)


def test_negative_upper_bound_is_rejected() -> None:
    with pytest.raises(ValueError):
        FrequencyTable(-1)


def test_dump_writes_nonzero_counters(tmp_path) -> None:
    table = FrequencyTable(6)
    for y in (2, 2, 6):
        table.increment(y)
    path = tmp_path / "dumps" / "table.csv"
    table.dump_csv(str(path))
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows == [["objective", "count"], ["2", "2"], ["6", "1"]]
