"""
Seeded Randomness

All randomness in a run flows from one numpy Generator backed by PCG64,
a 64-bit seeded permuted congruential generator. Equal seeds give equal
streams on every platform numpy supports.
"""

import hashlib
from typing import Any, Iterable

import numpy as np

MASK_64 = (1 << 64) - 1


def make_rng(seed: int) -> np.random.Generator:
    """
    Create the generator for one run.

    Args:
        seed: Any integer; reduced modulo 2^64

    Returns:
        A fresh PCG64-backed generator
    """
    return np.random.Generator(np.random.PCG64(int(seed) & MASK_64))


def tag_to_u64(tag: Any) -> int:
    """Stable 64-bit hash of a string or integer tag (independent of PYTHONHASHSEED)."""
    h = hashlib.blake2b(digest_size=8)
    if isinstance(tag, (int, np.integer)):
        h.update(b"i")
        h.update((int(tag) & MASK_64).to_bytes(8, "little", signed=False))
    else:
        b = str(tag).encode("utf-8")
        h.update(b"s")
        h.update(len(b).to_bytes(4, "little"))
        h.update(b)
    return int.from_bytes(h.digest(), "little")


def derive_seed(base_seed: int, key: Iterable[Any], run_index: int) -> int:
    """
    Seed of run `run_index` within the cell identified by `key`.

    seed = (base_seed XOR hash(key)) + run_index, modulo 2^64. Adding new
    cells never changes the seeds of existing ones.
    """
    h = int(base_seed) & MASK_64
    h ^= tag_to_u64("|".join(str(k) for k in key))
    return (h + int(run_index)) & MASK_64
