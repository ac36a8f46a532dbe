"""Deterministic 64-bit PRNG and unbiased integer sampling.

SplitMix64 is pinned here in full so generated families are bit-identical
across platforms and Python versions; nothing is delegated to the stdlib
``random`` module, whose method-level behaviour may drift between versions.
Per-trial streams come from :func:`derive_seed`, so trials are independent
of processing order.
"""

from __future__ import annotations

from .errors import BadParam

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a fixed 64-bit bijective scrambler."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, index: int) -> int:
    """Child seed for trial ``index``; independent of evaluation order."""
    return mix64(((master & _MASK64) + (index + 1) * _GOLDEN) & _MASK64)


class SplitMix64:
    """Sequential SplitMix64 stream seeded with a 64-bit integer."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return mix64(self._state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (no modulo bias)."""
        if n <= 0:
            raise BadParam("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def sample_indices(self, count: int, size: int) -> list[int]:
        """``count`` distinct indices from range(size), partial Fisher-Yates."""
        if count > size:
            raise BadParam("cannot sample more indices than the range holds")
        pool = list(range(size))
        for i in range(count):
            j = i + self.below(size - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:count]
