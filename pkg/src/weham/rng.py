"""Deterministic cross-platform sampling.

Reports must be byte-identical for identical inputs and seed, so random
points come from a self-contained splitmix64 generator rather than a
platform RNG: the 64-bit state advances by the golden-gamma constant and
each output is finalized with two xor-multiply rounds. Doubles are built
from the top 53 bits.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def uniform_in(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()


def sample_box(rng: SplitMix64, count: int, dim: int, half_width: float = 2.0,
               constraint=None, max_tries: int = 10000) -> np.ndarray:
    """Uniform points in [-half_width, half_width]^dim, rejection-filtered.

    `constraint` is an optional predicate on the candidate point; rejected
    draws still consume generator state, so results stay reproducible.
    """
    out = np.zeros((count, dim))
    k = 0
    tries = 0
    while k < count:
        p = np.array([rng.uniform_in(-half_width, half_width) for _ in range(dim)])
        tries += 1
        if tries > max_tries:
            raise RuntimeError("sampling constraint rejected too many draws")
        if constraint is None or constraint(p):
            out[k] = p
            k += 1
    return out


def min_norm_constraint(coords, min_norm_sq: float):
    """Predicate: the selected coordinates must have squared norm >= bound."""
    idx = list(coords)

    def ok(p):
        return float(sum(p[i] ** 2 for i in idx)) >= min_norm_sq

    return ok
