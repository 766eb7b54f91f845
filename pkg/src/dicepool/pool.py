"""The entropy pool state machine behind every die roll.

A pool is a value known to be uniformly distributed over [0, size); it
stores log2(size) bits of entropy, fractional amounts included (a
hidden 6-state value is worth 2.585 bits). Rolling an n-sided die
factors the pool into an outcome in [0, n) plus a smaller pool of
size // n states; when the pool value falls in the unusable top sliver
of the range, the draw fails but the sliver itself is still uniform, so
it is kept as the new, smaller pool instead of being thrown away. Fresh
entropy only ever enters through `top_off`, in fixed-size chunks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2

from .sources import EntropySource


class PoolOverflow(OverflowError):
    """Feeding more bits would push the pool range past 2**word_bits."""


class RangeTooLarge(ValueError):
    """Requested die range exceeds what a topped-off pool can cover."""


@dataclass(slots=True)
class RollRecord:
    """One die-roll result plus per-roll accounting."""

    sides: int          # requested range; outcome is uniform over [0, sides)
    outcome: int
    iterations: int     # loop passes until an accepted draw (>= 1)
    bits_consumed: int  # fresh bits drawn from the source during this roll


class EntropyPool:
    """Uniform value over a known range, refillable in fixed bit chunks.

    `size` counts the equally likely states, `value` is the current state
    in [0, size). `word_bits` bounds the range (size <= 2**word_bits) and
    `chunk_bits` is the refill granularity; the default (64, 8) refills
    byte-wise into a 64-bit word, `chunk_bits=1` gives bit-exact refills
    for theoretical experiments.

    A pool plus its source form one logical owner context: operations
    mutate state and must be externally serialized. Run parallel
    experiments on independent pool/source pairs.
    """

    __slots__ = ("size", "value", "word_bits", "chunk_bits")

    def __init__(self, word_bits: int = 64, chunk_bits: int = 8) -> None:
        if word_bits < 1:
            raise ValueError(f"word_bits must be positive, got {word_bits}")
        if not 1 <= chunk_bits <= word_bits:
            raise ValueError(
                f"chunk_bits must be in [1, word_bits={word_bits}], got {chunk_bits}"
            )
        self.word_bits = word_bits
        self.chunk_bits = chunk_bits
        self.size = 1    # the empty pool: one state, zero entropy
        self.value = 0

    @property
    def capacity(self) -> int:
        return 1 << self.word_bits

    @property
    def refill_ceiling(self) -> int:
        """Largest size that still admits (and demands) another chunk."""
        return 1 << (self.word_bits - self.chunk_bits)

    def entropy(self) -> float:
        """Stored entropy in bits: log2(size)."""
        return log2(self.size)

    def feed_bit(self, bit: int) -> None:
        """Shift one fresh bit in: size doubles, value becomes 2*value + bit."""
        if bit not in (0, 1):
            raise ValueError(f"bit must be 0 or 1, got {bit}")
        if self.size << 1 > self.capacity:
            raise PoolOverflow(
                f"pool of size {self.size} cannot double within {self.word_bits} bits"
            )
        self.size <<= 1
        self.value = (self.value << 1) | bit

    def top_off(self, source: EntropySource) -> int:
        """Refill from `source` until size exceeds 2**(word_bits - chunk_bits).

        Each step shifts in one chunk_bits-wide chunk, so on return the
        pool holds more than word_bits - chunk_bits bits of entropy (it
        is left untouched if it already did). Returns the number of
        fresh bits drawn.
        """
        chunk = self.chunk_bits
        ceiling = self.refill_ceiling
        drawn = 0
        while self.size <= ceiling:
            piece = source.next_bits(chunk)
            self.size <<= chunk
            self.value = (self.value << chunk) | piece
            drawn += chunk
        return drawn

    def roll_step(self, sides: int) -> int | None:
        """One reduction pass with no refill.

        Splits the current range into sides * keep accepted states plus a
        leftover sliver, where keep = size // sides. If the value is
        accepted, the pool keeps the quotient (a uniform draw over
        [0, keep)) and the remainder mod `sides` is returned as the
        outcome. Otherwise returns None and the pool becomes the sliver,
        re-based to start at zero; no entropy beyond the accept/reject
        test outcome is lost.
        """
        if sides < 1:
            raise ValueError(f"die must have at least one side, got {sides}")
        size, value = self.size, self.value
        keep, offcut = divmod(size, sides)
        cutoff = size - offcut  # sides * keep, formed without the wide product
        if value < cutoff:
            self.size = keep
            self.value, outcome = divmod(value, sides)
            return outcome
        self.size = offcut
        self.value = value - cutoff
        return None

    def roll(self, sides: int, source: EntropySource) -> RollRecord:
        """Roll a fair `sides`-sided die, refilling from `source` as needed.

        Tops off before every pass, not just on entry, so the accept
        chance stays high even once recycling has shrunk the pool.
        Requires sides <= 2**(word_bits - chunk_bits): that guarantees
        the topped-off pool covers the range and the loop cannot stall.
        """
        if sides < 1:
            raise ValueError(f"die must have at least one side, got {sides}")
        if sides > self.refill_ceiling:
            raise RangeTooLarge(
                f"sides={sides} exceeds 2**(word_bits-chunk_bits)={self.refill_ceiling}"
            )
        iterations = 0
        drawn = 0
        while True:
            iterations += 1
            drawn += self.top_off(source)
            outcome = self.roll_step(sides)
            if outcome is not None:
                return RollRecord(sides, outcome, iterations, drawn)

    def snapshot(self) -> tuple[int, int, int, int]:
        """State as plain integers: (size, value, word_bits, chunk_bits)."""
        return (self.size, self.value, self.word_bits, self.chunk_bits)

    @classmethod
    def from_snapshot(cls, snap: tuple[int, int, int, int]) -> "EntropyPool":
        """Rebuild a pool from `snapshot` output; also handy for preloads."""
        size, value, word_bits, chunk_bits = (int(x) for x in snap)
        pool = cls(word_bits, chunk_bits)
        if not 1 <= size <= pool.capacity:
            raise ValueError(f"size must be in [1, 2**{word_bits}], got {size}")
        if not 0 <= value < size:
            raise ValueError(f"value must be in [0, {size}), got {value}")
        pool.size = size
        pool.value = value
        return pool
