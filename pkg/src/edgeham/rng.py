"""Deterministic 64-bit random number generation.

The generator is splitmix64 (Steele, Lea & Flood's mixing constants). It is
tiny, has no history-dependent state beyond one word, and produces the same
stream on every platform and Python version, which the seeded test corpora
and the per-round coloring seeds depend on.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

T = TypeVar("T")


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def mix(a: int, b: int) -> int:
    """Combine two integers into one well-scrambled 64-bit seed."""
    return _mix64((a * _GAMMA + b + 1) & _MASK)


class SplitMix64:
    """Minimal deterministic RNG with the few methods the toolkit needs."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix64(self._state)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n). Rejection sampling keeps it unbiased."""
        if n <= 0:
            raise ValueError("randrange needs a positive bound")
        limit = _MASK - (_MASK + 1) % n
        while True:
            x = self.next_u64()
            if x <= limit:
                return x % n

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, seq: Sequence[T], k: int) -> list[T]:
        """k distinct items, order random (partial Fisher-Yates)."""
        if k > len(seq):
            raise ValueError("sample larger than population")
        pool = list(seq)
        for i in range(k):
            j = i + self.randrange(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
