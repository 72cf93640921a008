"""Portable linear congruential generator.

The stream is fully specified so that other implementations can reproduce
random chains and sample points bit for bit:

    state_0     = seed mod 2**64
    state_{i+1} = (6364136223846793005 * state_i + 1442695040888963407) mod 2**64
    output_i    = state_{i+1} >> 32          (32-bit unsigned)
    below(n)    = output mod n

The modulo bias of ``below`` is accepted; n is always tiny here.
"""

from __future__ import annotations

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = (1 << 64) - 1


class LCG:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u32(self) -> int:
        self.state = (MULTIPLIER * self.state + INCREMENT) & MASK
        return self.state >> 32

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u32() % n

    def integer(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in the closed range [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]
