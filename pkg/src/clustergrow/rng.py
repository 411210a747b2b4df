"""Seedable, portable uniform random numbers (SplitMix64).

The simulator needs bit-for-bit reproducibility between the pure-Python
reference path and the compiled kernel, so instead of wrapping a platform
generator we fix one: SplitMix64, a 64-bit counter-mix generator with full
period 2^64 and no state beyond one word.  The kernel re-implements the
same three-constant mix on uint64; tests assert the two streams agree
exactly, outputs and doubles both.

Doubles take the top 53 bits of an output word, uniform on [0, 1).
"""

from __future__ import annotations

__all__ = ["SplitMix64", "replica_seed"]

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_DOUBLE_UNIT = 1.0 / (1 << 53)


class SplitMix64:
    """SplitMix64 stream seeded with any 64-bit integer."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK

    def next_u64(self) -> int:
        """Next raw 64-bit output."""
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * _DOUBLE_UNIT


def replica_seed(seed: int, replica: int) -> int:
    """Seed for the given replica index.

    Replica k runs on a fresh SplitMix64 stream seeded with the (k+1)-th
    output of a parent stream seeded at ``seed``; the mix makes sibling
    streams statistically unrelated even for adjacent seeds.
    """
    if replica < 0:
        raise ValueError(f"replica index must be >= 0, got {replica}")
    parent = SplitMix64(seed)
    out = 0
    for _ in range(replica + 1):
        out = parent.next_u64()
    return out
