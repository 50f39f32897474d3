import io

import pytest

from harness.records import (
    CSV_HEADER,
    RecordParseError,
    RunRecord,
    load_records,
    read_csv,
    records_to_text,
    save_records,
)


def make_record(**overrides) -> RunRecord:
    fields = dict(
        algorithm="fea",
        problem="jump",
        instance="s=32,w=6",
        scale=32,
        seed=123,
        budget_fes=1000,
        used_fes=456,
        best_f=0,
        success=True,
    )
    fields.update(overrides)
    return RunRecord(**fields)


def test_empty_list_writes_header_only() -> None:
    assert records_to_text([]) == ",".join(CSV_HEADER) + "\n"


def test_rows_use_lowercase_booleans_and_quote_settings() -> None:
    text = records_to_text([make_record(), make_record(success=False, best_f=3, used_fes=1000)])
    lines = text.splitlines()
    assert lines[1] == 'fea,jump,"s=32,w=6",32,123,1000,456,0,true'
    assert lines[2].endswith(",1000,3,false")


def test_read_back_written_records() -> None:
    records = [make_record(seed=i, used_fes=10 + i) for i in range(5)]
    assert read_csv(io.StringIO(records_to_text(records))) == records


def test_file_helpers(tmp_path) -> None:
    path = str(tmp_path / "runs.csv")
    records = [make_record(), make_record(algorithm="ea")]
    save_records(records, path)
    assert load_records(path) == records


def test_record_invariants() -> None:
    with pytest.raises(ValueError):
        make_record(best_f=2)
    with pytest.raises(ValueError):
        make_record(success=False)
    with pytest.raises(ValueError):
        make_record(used_fes=0)
    with pytest.raises(ValueError):
        make_record(used_fes=1001)


def test_used_fes_above_budget_names_the_row() -> None:
    text = records_to_text([make_record(), make_record()])
    text = text.replace(",456,", ",1456,", 1)
    with pytest.raises(RecordParseError) as info:
        read_csv(io.StringIO(text))
    assert info.value.row_number == 2
    assert str(info.value).startswith("row 2: ")


@pytest.mark.parametrize(
    "text, row_number",
    [
        ("algorithm,problem\n", 1),
        ("", 1),
        (",".join(CSV_HEADER) + "\nfea,onemax,s=8,8,1,10,5\n", 2),
        (",".join(CSV_HEADER) + "\nfea,onemax,s=8,8,1,10,5,0,True\n", 2),
        (",".join(CSV_HEADER) + "\nfea,onemax,s=8,8,1,10,5,0,true\nfea,onemax,s=8,eight,1,10,5,0,true\n", 3),
    ],
)
def test_malformed_files(text, row_number) -> None:
    with pytest.raises(RecordParseError) as info:
        read_csv(io.StringIO(text))
    assert info.value.row_number == row_number
