"""
DIMACS CNF Files

This module reads and writes CNF formulas in the DIMACS format used by the
SATLib benchmark sets, including their '%' / '0' trailer lines.
"""

import glob
import logging
import os
from typing import List, Tuple, Union

from pydantic import BaseModel, ConfigDict, model_validator

logger = logging.getLogger(__name__)


class DimacsParseError(ValueError):
    """Malformed DIMACS input; line_number is 1-based (0 when not tied to a line)."""

    def __init__(self, message: str, line_number: int = 0):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number else ""
        super().__init__(prefix + message)


class CnfFormula(BaseModel):
    """
    A formula in conjunctive normal form.

    Literal v > 0 means variable v, -v its negation; variables are 1..num_vars.
    Duplicate literals and tautological clauses are kept verbatim.
    """

    model_config = ConfigDict(frozen=True)

    num_vars: int
    num_clauses: int
    clauses: List[List[int]]

    @model_validator(mode="after")
    def check_formula(self):
        if self.num_vars < 1:
            raise ValueError(f"num_vars must be positive, got {self.num_vars}")
        if self.num_clauses != len(self.clauses):
            raise ValueError(
                f"num_clauses={self.num_clauses} but {len(self.clauses)} clauses given"
            )
        for index, clause in enumerate(self.clauses):
            if not clause:
                raise ValueError(f"clause {index + 1} is empty")
            for literal in clause:
                if literal == 0 or abs(literal) > self.num_vars:
                    raise ValueError(
                        f"literal {literal} in clause {index + 1} outside [1, {self.num_vars}]"
                    )
        return self


def parse_dimacs(text: Union[bytes, str]) -> CnfFormula:
    """
    Parse DIMACS CNF text.

    Comment lines ('c ...') are skipped, parsing stops at a '%' line (SATLib
    trailer), and clauses may span several lines.

    Args:
        text: File contents as bytes or str

    Returns:
        The validated formula

    Raises:
        DimacsParseError: header problems, out-of-range literals, clause count
            mismatch or an unterminated final clause
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")

    num_vars = None
    declared = None
    clauses: List[List[int]] = []
    current: List[int] = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsParseError("duplicate problem line", line_number)
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise DimacsParseError(f"malformed problem line {line!r}", line_number)
            try:
                num_vars, declared = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsParseError(f"malformed problem line {line!r}", line_number)
            if num_vars < 1 or declared < 0:
                raise DimacsParseError(f"invalid sizes in {line!r}", line_number)
            continue
        if num_vars is None:
            raise DimacsParseError("clause data before the 'p cnf' header", line_number)
        for token in line.split():
            try:
                literal = int(token)
            except ValueError:
                raise DimacsParseError(f"not an integer: {token!r}", line_number)
            if literal == 0:
                if not current:
                    raise DimacsParseError("empty clause", line_number)
                clauses.append(current)
                current = []
            elif abs(literal) > num_vars:
                raise DimacsParseError(
                    f"literal {literal} outside [1, {num_vars}]", line_number
                )
            else:
                current.append(literal)

    if num_vars is None:
        raise DimacsParseError("missing 'p cnf' header")
    if current:
        raise DimacsParseError("final clause is not terminated by 0")
    if len(clauses) != declared:
        raise DimacsParseError(
            f"header declares {declared} clauses but {len(clauses)} were read"
        )

    logger.debug(f"Parsed CNF with {num_vars} variables and {len(clauses)} clauses")
    return CnfFormula(num_vars=num_vars, num_clauses=len(clauses), clauses=clauses)


def serialize_dimacs(formula: CnfFormula, comment: str = "") -> str:
    """Write a formula as DIMACS text, one clause per line."""
    lines = []
    if comment:
        lines.extend(f"c {row}" for row in comment.splitlines())
    lines.append(f"p cnf {formula.num_vars} {formula.num_clauses}")
    for clause in formula.clauses:
        lines.append(" ".join(str(literal) for literal in clause) + " 0")
    return "\n".join(lines) + "\n"


def load_cnf_directory(directory: str) -> List[Tuple[str, CnfFormula]]:
    """
    Load every '*.cnf' file in a directory, sorted by file name.

    Args:
        directory: Directory path

    Returns:
        List of (file name, formula)

    Raises:
        ValueError: no CNF files found
        DimacsParseError: a file is malformed (message names the file)
    """
    paths = sorted(glob.glob(os.path.join(directory, "*.cnf")))
    if not paths:
        raise ValueError(f"No *.cnf files found in {directory}")

    formulas = []
    for path in paths:
        name = os.path.basename(path)
        with open(path, "rb") as f:
            try:
                formulas.append((name, parse_dimacs(f.read())))
            except DimacsParseError as e:
                error = DimacsParseError(f"{name}: {e}")
                error.line_number = e.line_number
                raise error from e
    logger.info(f"Loaded {len(formulas)} CNF instances from {directory}")
    return formulas
