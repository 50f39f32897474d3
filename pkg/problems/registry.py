"""
Problem Registry

This module wraps the objective functions into Problem objects that carry
their scale and upper bound, and builds them by name for the harness and
the command line.
"""

import logging
import math
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

import numpy as np

from problems import functions

logger = logging.getLogger(__name__)


class Problem(ABC):
    """
    A minimization problem over {0,1}^s with integer objective in [0, UB].

    Problems are immutable after construction and can be shared by
    concurrent runs.
    """

    name: str = ""

    def __init__(self, scale: int, upper_bound: int, params: Optional[Dict[str, int]] = None):
        if scale < 1:
            raise ValueError(f"Scale must be positive, got {scale}")
        self.scale = int(scale)
        self.upper_bound = int(upper_bound)
        self.params: Dict[str, int] = dict(params or {})

    @abstractmethod
    def evaluate(self, x: np.ndarray) -> int:
        """Objective value of x, in [0, upper_bound]."""

    @property
    def instance(self) -> str:
        """Setting label used in run records, e.g. 's=32,w=6'."""
        parts = [f"s={self.scale}"]
        parts.extend(f"{k}={v}" for k, v in sorted(self.params.items()))
        return ",".join(parts)

    def __str__(self) -> str:
        return f"{self.name}({self.instance})"


class OneMax(Problem):
    name = "onemax"

    def __init__(self, scale: int):
        super().__init__(scale, scale)

    def evaluate(self, x: np.ndarray) -> int:
        return functions.onemax(x)


class LeadingOnes(Problem):
    name = "leadingones"

    def __init__(self, scale: int):
        super().__init__(scale, scale)

    def evaluate(self, x: np.ndarray) -> int:
        return functions.leadingones(x)


class TwoMax(Problem):
    name = "twomax"

    def __init__(self, scale: int):
        super().__init__(scale, scale)

    def evaluate(self, x: np.ndarray) -> int:
        return functions.twomax(x)


class Trap(Problem):
    name = "trap"

    def __init__(self, scale: int):
        super().__init__(scale, scale)

    def evaluate(self, x: np.ndarray) -> int:
        return functions.trap(x)


class Jump(Problem):
    name = "jump"

    def __init__(self, scale: int, omega: int):
        if not 1 < omega < scale:
            raise ValueError(f"Jump width must satisfy 1 < w < s={scale}, got {omega}")
        super().__init__(scale, scale + omega - 1, {"w": omega})
        self.omega = omega

    def evaluate(self, x: np.ndarray) -> int:
        return functions.jump(x, self.omega)


class Plateau(Problem):
    name = "plateau"

    def __init__(self, scale: int, omega: int):
        if not 1 < omega < scale:
            raise ValueError(f"Plateau width must satisfy 1 < w < s={scale}, got {omega}")
        super().__init__(scale, scale, {"w": omega})
        self.omega = omega

    def evaluate(self, x: np.ndarray) -> int:
        return functions.plateau(x, self.omega)


class NQueens(Problem):
    name = "nqueens"

    def __init__(self, n: int):
        if n < 4:
            raise ValueError(f"NQueens needs a board side n >= 4, got {n}")
        self.n = n
        self.lines = functions.queen_lines(n)
        # The all-ones board maximizes every line penalty
        ub = functions.nqueens(np.ones(n * n, dtype=bool), n, self.lines)
        super().__init__(n * n, ub, {"n": n})

    def evaluate(self, x: np.ndarray) -> int:
        return functions.nqueens(x, self.n, self.lines)


class Ising(Problem):
    """Ising model on an explicit edge set; subclasses fix the graph."""

    def __init__(self, scale: int, edges: functions.EdgeSet, params: Optional[Dict[str, int]] = None):
        self.pairs = functions.edge_pairs(edges, scale)
        super().__init__(scale, len(self.pairs), params)
        self.edges = edges

    def evaluate(self, x: np.ndarray) -> int:
        return functions.ising(x, self.pairs)


class Ising1D(Ising):
    name = "ising1d"

    def __init__(self, scale: int):
        super().__init__(scale, functions.edges_1d(scale))


class Ising2D(Ising):
    name = "ising2d"

    def __init__(self, side: int):
        super().__init__(side * side, functions.edges_2d(side), {"N": side})
        self.side = side


class LinearHarmonic(Problem):
    name = "linharm"

    def __init__(self, scale: int):
        super().__init__(scale, scale * (scale + 1) // 2)

    def evaluate(self, x: np.ndarray) -> int:
        return functions.linear_harmonic(x)


PROBLEMS = {
    cls.name: cls
    for cls in (
        OneMax,
        LeadingOnes,
        TwoMax,
        Trap,
        Jump,
        Plateau,
        NQueens,
        Ising1D,
        Ising2D,
        LinearHarmonic,
    )
}

# Problems with a width parameter
WIDTH_PROBLEMS = ("jump", "plateau")

# Named width shortcuts for jump and plateau instances
WIDTH_SHORTCUTS = {
    "lnS": lambda s: math.floor(math.log(s)),
    "lnS1": lambda s: math.floor(math.log(s)) + 1,
    "sqrtS": lambda s: math.isqrt(s),
    "sqrtS1": lambda s: math.isqrt(s) + 1,
    "halfS1": lambda s: s // 2 - 1,
}


def resolve_width(spec: Any, s: int) -> int:
    """
    Turn a width spec (an int or a shortcut name) into a width for scale s.

    Raises:
        ValueError: unknown shortcut or unusable literal
    """
    if isinstance(spec, str) and spec in WIDTH_SHORTCUTS:
        return WIDTH_SHORTCUTS[spec](s)
    try:
        return int(spec)
    except (TypeError, ValueError):
        raise ValueError(
            f"Unknown width {spec!r}; use an integer or one of {', '.join(WIDTH_SHORTCUTS)}"
        )


def standard_widths(s: int) -> List[int]:
    """All five shortcut widths for scale s, deduplicated and restricted to 1 < w < s."""
    widths = []
    for rule in WIDTH_SHORTCUTS.values():
        w = rule(s)
        if 1 < w < s and w not in widths:
            widths.append(w)
    return widths


def make_problem(name: str, s: int, params: Optional[Dict[str, Any]] = None) -> Problem:
    """
    Build a registered problem.

    Args:
        name: Registry name, e.g. 'jump'
        s: Scale (bit string length)
        params: 'omega' for jump/plateau, optional 'n' for nqueens and
            'N' for ising2d (derived from s when absent)

    Returns:
        The problem instance

    Raises:
        ValueError: unknown name or inconsistent parameters
    """
    params = dict(params or {})
    if name not in PROBLEMS:
        raise ValueError(f"Unknown problem {name!r}; known: {', '.join(PROBLEMS)}")

    if name in WIDTH_PROBLEMS:
        if "omega" not in params:
            raise ValueError(f"Problem {name} needs a width 'omega'")
        return PROBLEMS[name](s, resolve_width(params["omega"], s))

    if name in ("nqueens", "ising2d"):
        key = "n" if name == "nqueens" else "N"
        if not functions.is_square(s):
            raise ValueError(f"Problem {name} needs a square scale, got {s}")
        side = math.isqrt(s)
        if key in params and int(params[key]) != side:
            raise ValueError(f"Problem {name}: s={s} does not match {key}={params[key]}")
        return PROBLEMS[name](side)

    if params:
        raise ValueError(f"Problem {name} takes no parameters, got {sorted(params)}")
    return PROBLEMS[name](s)
