"""
Bit-String Operators

The search space is {0,1}^s. A bit string is a one-dimensional numpy
array of dtype bool whose length never changes after creation. Position i
of the equations (1-based) is stored at index i-1.

All operators draw only from the Generator passed to them, in a fixed order,
so that paired-seed runs consume identical random streams.
"""

import numpy as np


def random_bits(rng: np.random.Generator, s: int) -> np.ndarray:
    """Uniformly random bit string of length s."""
    if s < 1:
        raise ValueError(f"Bit string length must be positive, got {s}")
    return rng.integers(0, 2, size=s, dtype=np.uint8).astype(bool)


def bits_from_string(text: str) -> np.ndarray:
    """Build a bit string from a literal such as '0101'."""
    if not text or any(c not in "01" for c in text):
        raise ValueError(f"Not a bit string literal: {text!r}")
    return np.array([c == "1" for c in text], dtype=bool)


def bits_to_string(x: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in x)


def _check_probability(p: float, name: str = "p"):
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


def binomial(rng: np.random.Generator, s: int, p: float) -> int:
    """
    Sample l ~ Bin(s, p).

    Args:
        rng: Random generator
        s: Number of trials, at least 1
        p: Success probability in [0, 1]

    Returns:
        Number of successes in [0, s]
    """
    if s < 1:
        raise ValueError(f"Number of trials must be positive, got {s}")
    _check_probability(p)
    return int(rng.binomial(s, p))


def binomial_gt0(rng: np.random.Generator, s: int, p: float) -> int:
    """
    Sample l ~ Bin(s, p) conditioned on l > 0 by rejection.

    Args:
        rng: Random generator
        s: Number of trials, at least 1
        p: Success probability in (0, 1]

    Returns:
        Number of successes in [1, s]
    """
    if p == 0.0:
        raise ValueError("p must be positive, the rejection loop would never end")
    while True:
        ell = binomial(rng, s, p)
        if ell > 0:
            return ell


def mutate_exact(rng: np.random.Generator, x: np.ndarray, ell: int) -> np.ndarray:
    """
    Copy x and flip exactly ell distinct positions chosen uniformly at random.

    The flipped index set is uniform over all C(s, ell) subsets. The input
    is not modified.
    """
    s = x.shape[0]
    if not 1 <= ell <= s:
        raise ValueError(f"Number of flipped bits must lie in [1, {s}], got {ell}")
    y = x.copy()
    if ell == s:
        np.logical_not(y, out=y)
        return y
    indices = rng.choice(s, size=ell, replace=False)
    y[indices] = ~y[indices]
    return y


def crossover(
    rng: np.random.Generator, x1: np.ndarray, x2: np.ndarray, c: float
) -> np.ndarray:
    """
    Uniform crossover taking each bit from x2 with probability c, else from x1.

    One uniform real is drawn per position, also when c is 0 or 1.
    """
    if x1.shape != x2.shape:
        raise ValueError(f"Length mismatch: {x1.shape[0]} vs {x2.shape[0]}")
    _check_probability(c, "c")
    mask = rng.random(x1.shape[0]) < c
    return np.where(mask, x2, x1)


def hamming(x1: np.ndarray, x2: np.ndarray) -> int:
    """Number of positions in which x1 and x2 differ."""
    if x1.shape != x2.shape:
        raise ValueError(f"Length mismatch: {x1.shape[0]} vs {x2.shape[0]}")
    return int(np.count_nonzero(x1 != x2))
