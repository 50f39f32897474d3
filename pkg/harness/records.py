"""
Run Records

This module defines the per-run result schema and its CSV persistence.
"""

import csv
import io
import logging
import sys
from typing import Iterable, List, TextIO

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

logger = logging.getLogger(__name__)

CSV_HEADER = [
    "algorithm",
    "problem",
    "instance",
    "scale",
    "seed",
    "budget_fes",
    "used_fes",
    "best_f",
    "success",
]


class RecordParseError(ValueError):
    """Malformed row in a results file; row_number counts the header as row 1."""

    def __init__(self, message: str, row_number: int):
        self.row_number = row_number
        super().__init__(f"row {row_number}: {message}")


class RunRecord(BaseModel):
    """
    Outcome of one run.

    used_fes is the FE count at the first optimal evaluation for a
    successful run, else the FEs consumed before the budget stopped it.
    """

    model_config = ConfigDict(frozen=True)

    algorithm: str
    problem: str
    instance: str
    scale: int
    seed: int
    budget_fes: int
    used_fes: int
    best_f: int
    success: bool

    @model_validator(mode="after")
    def check_record(self):
        if self.success != (self.best_f == 0):
            raise ValueError(f"success={self.success} contradicts best_f={self.best_f}")
        if not 1 <= self.used_fes <= self.budget_fes:
            raise ValueError(f"used_fes={self.used_fes} outside [1, budget_fes={self.budget_fes}]")
        if self.best_f < 0:
            raise ValueError(f"best_f must be non-negative, got {self.best_f}")
        return self

    def sort_key(self):
        return (self.algorithm, self.problem, self.instance, self.seed)

    def to_row(self) -> List[str]:
        return [
            self.algorithm,
            self.problem,
            self.instance,
            str(self.scale),
            str(self.seed),
            str(self.budget_fes),
            str(self.used_fes),
            str(self.best_f),
            "true" if self.success else "false",
        ]


def write_csv(records: Iterable[RunRecord], sink: TextIO):
    """
    Write records with a header row.

    Args:
        records: Records in output order
        sink: Text stream opened with newline=''
    """
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    count = 0
    for record in records:
        writer.writerow(record.to_row())
        count += 1
    logger.debug(f"Wrote {count} run records")


def read_csv(source: TextIO) -> List[RunRecord]:
    """
    Read records written by write_csv.

    Raises:
        RecordParseError: wrong header, wrong field count, or a row that
            violates a record invariant
    """
    reader = csv.reader(source)
    header = next(reader, None)
    if header != CSV_HEADER:
        raise RecordParseError(f"expected header {','.join(CSV_HEADER)}, got {header}", 1)

    records = []
    for row_number, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise RecordParseError(f"expected {len(CSV_HEADER)} fields, got {len(row)}", row_number)
        fields = dict(zip(CSV_HEADER, row))
        if fields["success"] not in ("true", "false"):
            raise RecordParseError(f"success must be true or false, got {fields['success']!r}", row_number)
        fields["success"] = fields["success"] == "true"
        try:
            records.append(RunRecord(**fields))
        except ValidationError as e:
            raise RecordParseError(str(e), row_number) from e
    return records


def save_records(records: Iterable[RunRecord], path: str):
    """Write records to a file, or to standard output for '-'."""
    if path == "-":
        write_csv(records, sys.stdout)
        return
    with open(path, "w", newline="") as f:
        write_csv(records, f)
    logger.info(f"Run records saved to {path}")


def load_records(path: str) -> List[RunRecord]:
    with open(path, newline="") as f:
        records = read_csv(f)
    logger.info(f"Loaded {len(records)} run records from {path}")
    return records


def records_to_text(records: Iterable[RunRecord]) -> str:
    buffer = io.StringIO()
    write_csv(records, buffer)
    return buffer.getvalue()
