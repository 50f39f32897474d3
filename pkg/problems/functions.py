"""
Objective Functions

Minimization versions of the theory benchmark functions. Every function
takes a boolean numpy bit string and returns an int in [0, UB] whose
optimum value is 0. Bit i of the equations (1-based) is x[i - 1].
"""

import math
from typing import List, Optional, Tuple

import numpy as np

EdgeSet = List[Tuple[int, int]]


def count_ones(x: np.ndarray) -> int:
    return int(np.count_nonzero(x))


def onemax(x: np.ndarray) -> int:
    """s - |x|_1"""
    return x.shape[0] - count_ones(x)


def leadingones(x: np.ndarray) -> int:
    """s minus the length of the longest all-ones prefix."""
    s = x.shape[0]
    if x.all():
        return 0
    # argmin on bool finds the first 0
    return s - int(np.argmin(x))


def twomax(x: np.ndarray) -> int:
    s = x.shape[0]
    ones = count_ones(x)
    if ones == s:
        return 0
    return 1 + s - max(ones, s - ones)


def trap(x: np.ndarray) -> int:
    """OneMax with the worst string swapped in as the global optimum."""
    s = x.shape[0]
    ones = count_ones(x)
    if ones == 0:
        return 0
    return s - ones + 1


def _check_width(omega: int, s: int, what: str):
    if not 1 < omega < s:
        raise ValueError(f"{what} width must satisfy 1 < w < s={s}, got {omega}")


def jump(x: np.ndarray, omega: int) -> int:
    """Deceptive gap of width omega right before the optimum."""
    s = x.shape[0]
    _check_width(omega, s, "Jump")
    ones = count_ones(x)
    if ones == s or ones <= s - omega:
        return s - ones
    return omega + ones


def plateau(x: np.ndarray, omega: int) -> int:
    """Flat region of width omega right before the optimum."""
    s = x.shape[0]
    _check_width(omega, s, "Plateau")
    ones = count_ones(x)
    if ones == s or ones <= s - omega:
        return s - ones
    return omega


def queen_lines(n: int) -> np.ndarray:
    """
    Incidence matrix of all board lines of an n x n board.

    Rows are the n rows, n columns, and the 2n-1 diagonals of each direction
    (corner diagonals of length 1 included; they never carry a penalty).
    Board cell (r, c) is bit r * n + c.
    """
    if n < 1:
        raise ValueError(f"Board side must be positive, got {n}")
    s = n * n
    lines = np.zeros((n + n + 2 * (2 * n - 1), s), dtype=np.int64)
    row = 0
    for r in range(n):
        lines[row, r * n:(r + 1) * n] = 1
        row += 1
    for c in range(n):
        lines[row, c::n] = 1
        row += 1
    for d in range(-(n - 1), n):
        for r in range(n):
            c = r + d
            if 0 <= c < n:
                lines[row, r * n + c] = 1
        row += 1
    for a in range(2 * n - 1):
        for r in range(n):
            c = a - r
            if 0 <= c < n:
                lines[row, r * n + c] = 1
        row += 1
    return lines


def nqueens(x: np.ndarray, n: int, lines: Optional[np.ndarray] = None) -> int:
    """n - Q(x) + n * sum over all lines of max(0, Q_line(x) - 1)"""
    if x.shape[0] != n * n:
        raise ValueError(f"NQueens needs s = n^2 = {n * n} bits, got {x.shape[0]}")
    if lines is None:
        lines = queen_lines(n)
    per_line = lines @ x.astype(np.int64)
    penalty = int(np.maximum(per_line - 1, 0).sum())
    return n - count_ones(x) + n * penalty


def edges_1d(s: int) -> EdgeSet:
    """Ring: every bit is connected to its successor."""
    if s < 3:
        raise ValueError(f"A ring needs at least 3 nodes, got {s}")
    return [(i, (i + 1) % s) for i in range(s)]


def edges_2d(side: int) -> EdgeSet:
    """
    Torus of side N (s = N^2): each cell paired with its right and its down
    neighbour. These are ordered pairs, so a side of 2 lists every adjacency
    twice, once per direction.
    """
    if side < 2:
        raise ValueError(f"A torus needs side N >= 2, got {side}")
    edges = []
    for beta in range(side):
        for alpha in range(side):
            cell = alpha + beta * side
            edges.append((cell, (alpha + 1) % side + beta * side))
            edges.append((cell, alpha + ((beta + 1) % side) * side))
    return edges


def edge_pairs(edges, s: int) -> np.ndarray:
    """Edges as an (m, 2) index array, checked against s nodes."""
    pairs = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if pairs.size and (pairs.min() < 0 or pairs.max() >= s):
        raise ValueError(f"Edge index outside [0, {s - 1}]")
    return pairs


def ising(x: np.ndarray, edges) -> int:
    """Number of edges whose endpoints disagree."""
    pairs = edge_pairs(edges, x.shape[0])
    return int(np.count_nonzero(x[pairs[:, 0]] != x[pairs[:, 1]]))


def linear_harmonic(x: np.ndarray) -> int:
    """s(s+1)/2 - sum of i * x_i"""
    s = x.shape[0]
    weights = np.arange(1, s + 1, dtype=np.int64)
    return s * (s + 1) // 2 - int(weights[x].sum())


def is_square(value: int) -> bool:
    return value >= 0 and math.isqrt(value) ** 2 == value
