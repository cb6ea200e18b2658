"""Seeded random primitives shared by the stimulus engine and session codes.

Every seeded feature in this project (card draws, attribute recombination,
join codes) goes through this module so that a (seed, operation) pair yields
the same result on every platform and in every port.  The arithmetic is fixed
bit-exactly:

SplitMix64 (public-domain mixer by Sebastiano Vigna):

    state  = (state + 0x9E3779B97F4A7C15) mod 2^64
    z      = state
    z      = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z      = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output = z XOR (z >> 31)

Bounded draw: ``next_below(n) = next() mod n``.  The modulo bias is < 2^-32
for every n used here (n < 2^32) and keeping the rule this simple makes the
generator trivial to reimplement in another language.

Sampling without replacement: a Fisher-Yates *prefix* shuffle over the index
list ``0..len-1``; step i swaps index i with ``i + next_below(len - i)`` and
the first n indices are the sample, in draw order.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic 64-bit generator; seeds are taken modulo 2^64."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def next_below(self, n: int) -> int:
        """Uniform-ish integer in [0, n). Requires n >= 1."""
        if n < 1:
            raise ValueError(f"bound must be >= 1, got {n}")
        return self.next_u64() % n


def sample_indices(population: int, n: int, seed: int) -> list[int]:
    """Draw n distinct indices from range(population), in draw order.

    Fisher-Yates prefix shuffle driven by SplitMix64(seed); the full
    procedure is documented in the module docstring.
    """
    if not 0 <= n <= population:
        raise ValueError(f"cannot draw {n} from population of {population}")
    rng = SplitMix64(seed)
    indices = list(range(population))
    for i in range(n):
        j = i + rng.next_below(population - i)
        indices[i], indices[j] = indices[j], indices[i]
    return indices[:n]
