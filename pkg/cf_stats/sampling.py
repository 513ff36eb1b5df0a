"""Seeded random streams for the Monte Carlo studies.

One ``SeedSequence(seed)`` is spawned into one child per worker and each child
drives its own PCG64 generator, so a run is reproducible for a fixed
(seed, workers) pair.
"""
from __future__ import annotations

from typing import List

import numpy as np
from numpy.random import Generator, SeedSequence

# rng.integers handles spans up to int64; wider spans go through raw bytes.
_NUMPY_SPAN = 2 ** 63 - 1


def spawn_seeds(seed: int, workers: int) -> List[SeedSequence]:
    return SeedSequence(seed).spawn(workers)


def make_rng(seed_seq: SeedSequence) -> Generator:
    return np.random.default_rng(seed_seq)


def split_counts(samples: int, workers: int) -> List[int]:
    base, extra = divmod(samples, workers)
    return [base + (1 if j < extra else 0) for j in range(workers)]


def uniform_int(rng: Generator, low: int, high: int) -> int:
    """Uniform integer in [low, high] without modulo bias, at any size."""
    span = high - low + 1
    if span <= 0:
        raise ValueError(f"empty range [{low}, {high}]")
    if span <= _NUMPY_SPAN:
        return low + int(rng.integers(span))
    bits = (span - 1).bit_length()
    nbytes = (bits + 7) // 8
    shift = 8 * nbytes - bits
    while True:
        x = int.from_bytes(rng.bytes(nbytes), "little") >> shift
        if x < span:
            return low + x
