"""
Reproducible seed derivation

Every random stream in the package is keyed by a 64-bit integer derived
from the master seed with the SplitMix64 finalizer:

    z = (x + 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    z = z ^ (z >> 31)

`derive_seed(master, *keys)` folds each key into the state with one
mixing round, so the seed of permutation `b` depends only on
(master, b) and never on scheduling.
"""

import numpy as np

MASK64 = (1 << 64) - 1

# stream tags keep center sampling, data generation and permutations apart
STREAM_PERMUTATION = 1
STREAM_CENTERS = 2
STREAM_DATA = 3
STREAM_REPLICATION = 4
STREAM_JITTER = 5


def mix64(value: int) -> int:
    """
    Applies the SplitMix64 finalizer to a 64-bit integer.

    Args:
        value (int): Input, reduced modulo 2**64.

    Returns:
        int: Mixed 64-bit value.
    """
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *keys: int) -> int:
    """
    Derives a child seed from a master seed and a sequence of integer keys.

    Args:
        master (int): Master seed (any integer; negative values wrap).
        *keys (int): Stream tag, index, etc.

    Returns:
        int: 64-bit seed.
    """
    state = mix64(master & MASK64)
    for key in keys:
        state = mix64(state ^ (key & MASK64))
    return state


def rng_for(master: int, *keys: int) -> np.random.Generator:
    """Returns a numpy Generator seeded by `derive_seed(master, *keys)`."""
    return np.random.default_rng(derive_seed(master, *keys))
