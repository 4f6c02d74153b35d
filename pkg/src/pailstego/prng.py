"""Random sources.

SplitMix64 is the portable deterministic stream: same seed, same words, on
any platform. Anything with a getrandbits(k) method works as a source, so
secrets-backed and seeded-stdlib generators drop in interchangeably.
"""

from __future__ import annotations

import random

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64 step function; one 64-bit word per call."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_word(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def getrandbits(self, k: int) -> int:
        """Top k bits of ceil(k/64) consecutive words."""
        if k <= 0:
            return 0
        words = (k + 63) // 64
        x = 0
        for _ in range(words):
            x = (x << 64) | self.next_word()
        return x >> (64 * words - k)


def rand_below(rng, bound: int) -> int:
    """Uniform draw from [0, bound) by rejection, off any getrandbits source."""
    if bound <= 0:
        raise ValueError(f"bound must be positive, got {bound}")
    if bound == 1:
        return 0
    k = bound.bit_length()
    while True:
        x = rng.getrandbits(k)
        if x < bound:
            return x


def system_rng() -> random.SystemRandom:
    """Entropy-backed source with the same getrandbits interface."""
    return random.SystemRandom()
