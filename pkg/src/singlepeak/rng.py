"""Seeded splitmix64 generator.

The whole package draws randomness from this one generator so that any run
is reproducible from its seed alone, in any language that implements
splitmix64.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """The splitmix64 output finalizer."""
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


class RngState:
    """Mutable splitmix64 state.

    ``next_u64`` adds the golden-ratio increment to the state and returns the
    mixed value. ``coin`` is the top bit of one output (1 means heads).
    """

    __slots__ = ("state", "draws")

    def __init__(self, seed: int):
        self.state = seed & MASK64
        self.draws = 0

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        self.draws += 1
        return mix64(self.state)

    def coin(self) -> int:
        return self.next_u64() >> 63

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``.

        Outputs at or above the largest multiple of ``bound`` are rejected,
        which removes modulo bias. ``bound == 1`` consumes nothing.
        """
        if bound < 1:
            raise ValueError(f"bound must be positive, got {bound}")
        if bound == 1:
            return 0
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def advance(self, steps: int) -> None:
        """Skip ``steps`` outputs."""
        self.state = (self.state + steps * GAMMA) & MASK64
        self.draws += steps

    def block(self, count: int) -> np.ndarray:
        """The next ``count`` outputs as a uint64 array, advancing the state."""
        out = peek_block(self.state, count)
        self.advance(count)
        return out

    def copy(self) -> RngState:
        clone = RngState(self.state)
        clone.draws = self.draws
        return clone

    def __repr__(self):
        return f"RngState(state={self.state:#018x})"


def peek_block(state: int, count: int) -> np.ndarray:
    """Outputs 1..count that a generator in ``state`` would produce."""
    k = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(state) + k * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
        z ^= z >> np.uint64(31)
    return z


def stream(seed: int, index: int) -> RngState:
    """Independent generator for worker ``index`` of a sharded job.

    Stream ``i`` is seeded with the first splitmix64 output of ``seed + i``.
    """
    return RngState(mix64((seed + index + GAMMA) & MASK64))
