"""
Per-realization seed derivation.

Every realization owns a generator seeded by a SplitMix64 avalanche chain over
(master_seed, slot_index, realization_index), so any realization can be replayed alone and
the outcome does not depend on which worker ran it.
"""

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(value: int) -> int:
    """One SplitMix64 output step for a 64-bit state."""
    z = (value + _GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, slot_index: int, realization_index: int) -> int:
    """Mix the three coordinates of a realization into one 64-bit seed."""
    h = splitmix64(master_seed & MASK64)
    h = splitmix64(h ^ (slot_index & MASK64))
    return splitmix64(h ^ (realization_index & MASK64))


def realization_rng(seed: int) -> np.random.Generator:
    """Generator driving the sweep permutations of one realization."""
    return np.random.Generator(np.random.PCG64(seed))
