"""Seeded, splittable random streams for reproducible generation.

Every source of randomness in the synthesis pipeline is a `Stream` derived
from a 64-bit master seed by splitting on string or integer labels.  Streams
are counter-based (SplitMix64 over an incrementing counter), so:

  * the same (seed, label path) always yields the same draws, on any platform;
  * sibling streams are independent -- consuming one never perturbs another;
  * real-valued draws land on a fixed 1/2^20 lattice, keeping results
    byte-identical across float environments.

Python's `random` module is deliberately not used here: its sequences are not
stable across stream-splitting patterns, and we need child streams addressable
by label, not by draw order.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15

T = TypeVar("T")


def _splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & _MASK64
    return h


def _label_bytes(label: int | str) -> bytes:
    if isinstance(label, int):
        return b"i" + (label & _MASK64).to_bytes(8, "little")
    return b"s" + label.encode("utf-8")


class Stream:
    """One independent random stream, splittable by label."""

    __slots__ = ("key", "_counter")

    def __init__(self, key: int):
        self.key = key & _MASK64
        self._counter = 0

    @classmethod
    def from_seed(cls, seed: int) -> "Stream":
        return cls(_splitmix64(seed & _MASK64))

    def split(self, label: int | str) -> "Stream":
        """Derive a child stream. Independent of this stream's draw position."""
        h = _fnv1a64(self.key.to_bytes(8, "little") + _label_bytes(label))
        return Stream(_splitmix64(h))

    def next_u64(self) -> int:
        self._counter += 1
        return _splitmix64((self.key ^ (self._counter * _GOLDEN)) & _MASK64)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive. Rejection keeps it unbiased."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            u = self.next_u64()
            if u < limit:
                return lo + (u % span)

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform real on a 1/2^20 lattice inside [lo, hi]."""
        tick = self.randint(0, 1 << 20)
        return lo + (hi - lo) * (tick / float(1 << 20))

    def choice(self, items: Sequence[T], weights: Sequence[float] | None = None) -> T:
        if not items:
            raise ValueError("choice from empty sequence")
        if weights is None:
            return items[self.randint(0, len(items) - 1)]
        if len(weights) != len(items):
            raise ValueError("weights length mismatch")
        # integer-only weighted draw: scale weights to a common integer grid
        scaled = [max(0, round(w * (1 << 20))) for w in weights]
        total = sum(scaled)
        if total <= 0:
            raise ValueError("weights sum to zero")
        r = self.randint(0, total - 1)
        acc = 0
        for item, w in zip(items, scaled):
            acc += w
            if r < acc:
                return item
        return items[-1]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), order randomized."""
        if k > n:
            raise ValueError("sample larger than population")
        pool = list(range(n))
        self.shuffle(pool)
        return pool[:k]
