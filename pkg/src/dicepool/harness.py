"""Empirical validation: metered benchmarks, exhaustive small-pool
enumeration, chi-square uniformity, and a variable-radix shuffle demo.

Benchmarks meter consumption with a CountingSource and correct for
entropy still resident in the pool at the end of a run, so short runs do
not misreport up to a word's worth of stored bits as waste:

    waste_per_roll = (bits_in - pool_delta - entropy_out) / rolls
    efficiency     = entropy_out / (bits_in - pool_delta)
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import ClassVar, Sequence

from .pool import EntropyPool
from .sources import CountingSource, EntropySource, SeededSource

MAX_ENUM_TAPE_BITS = 16
MAX_ENUM_SIDES = 20


def chi_square(counts: Sequence[int]) -> tuple[float, int]:
    """Pearson statistic against the uniform expectation.

    Returns (statistic, degrees of freedom = categories - 1). Validity
    of the chi-square approximation wants an expected count of at least
    5 per category; that is the caller's business, not checked here.
    """
    if len(counts) < 2:
        raise ValueError("need at least two categories")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be nonnegative")
    total = sum(counts)
    if total == 0:
        raise ValueError("need at least one observation")
    expected = total / len(counts)
    stat = sum((c - expected) ** 2 for c in counts) / expected
    return stat, len(counts) - 1


@dataclass
class BenchReport:
    """Aggregate statistics of one benchmark run.

    The first ten fields are the frozen CSV row, in column order.
    `counts` (per-outcome histogram) and `elapsed` (wall-clock seconds,
    reported but never asserted) are extras kept out of the CSV.
    """

    sampler: str
    n: int
    rolls: int
    bits_in: int
    pool_delta: float
    entropy_out: float
    waste_per_roll: float
    efficiency: float
    chi_square: float
    dof: int
    counts: list[int] = field(default_factory=list, repr=False)
    elapsed: float = 0.0

    CSV_COLUMNS: ClassVar[tuple[str, ...]] = (
        "sampler", "n", "rolls", "bits_in", "pool_delta", "entropy_out",
        "waste_per_roll", "efficiency", "chi_square", "dof",
    )

    @classmethod
    def csv_header(cls) -> str:
        return ",".join(cls.CSV_COLUMNS)

    def csv_row(self) -> str:
        cells = []
        for name in self.CSV_COLUMNS:
            value = getattr(self, name)
            cells.append(format(value, ".10g") if isinstance(value, float) else str(value))
        return ",".join(cells)

    def summary(self) -> str:
        return (
            f"{self.sampler}: n={self.n} rolls={self.rolls}\n"
            f"  bits in          {self.bits_in}\n"
            f"  pool delta       {self.pool_delta:+.4f} bits\n"
            f"  entropy out      {self.entropy_out:.4f} bits\n"
            f"  waste per roll   {self.waste_per_roll:.6g} bits\n"
            f"  efficiency       {self.efficiency:.6f}\n"
            f"  chi-square       {self.chi_square:.4f} (dof {self.dof})\n"
            f"  elapsed          {self.elapsed:.3f} s"
        )


def _assemble(sampler: str, sides: int, rolls: int, bits_in: int,
              pool_delta: float, counts: list[int]) -> BenchReport:
    entropy_out = rolls * math.log2(sides)
    spent = bits_in - pool_delta
    stat, dof = chi_square(counts)
    return BenchReport(
        sampler=sampler,
        n=sides,
        rolls=rolls,
        bits_in=bits_in,
        pool_delta=pool_delta,
        entropy_out=entropy_out,
        waste_per_roll=(spent - entropy_out) / rolls,
        efficiency=entropy_out / spent,
        chi_square=stat,
        dof=dof,
        counts=counts,
    )


def _merge(parts: list[BenchReport]) -> BenchReport:
    counts = [0] * len(parts[0].counts)
    for part in parts:
        for i, c in enumerate(part.counts):
            counts[i] += c
    return _assemble(
        parts[0].sampler,
        parts[0].n,
        sum(p.rolls for p in parts),
        sum(p.bits_in for p in parts),
        sum(p.pool_delta for p in parts),
        counts,
    )


def _shards(rolls: int, jobs: int) -> list[int]:
    base, extra = divmod(rolls, jobs)
    sizes = [base + 1] * extra + [base] * (jobs - extra)
    return [s for s in sizes if s > 0]


def _check_bench_args(sides: int, rolls: int, jobs: int) -> None:
    if sides < 2:
        raise ValueError(f"bench needs sides >= 2, got {sides}")
    if rolls < 1:
        raise ValueError(f"rolls must be positive, got {rolls}")
    if jobs < 1:
        raise ValueError(f"jobs must be positive, got {jobs}")


def _run_sharded(single, rolls: int, seed: int, jobs: int) -> BenchReport:
    start = time.perf_counter()
    if jobs == 1:
        report = single(rolls, seed)
    else:
        # Shard i gets seed + i and its own pool/source pair; counting is
        # per pool, so merged consumption accounting stays exact.
        sizes = _shards(rolls, jobs)
        with ThreadPoolExecutor(max_workers=len(sizes)) as executor:
            futures = [
                executor.submit(single, size, seed + i)
                for i, size in enumerate(sizes)
            ]
            report = _merge([f.result() for f in futures])
    report.elapsed = time.perf_counter() - start
    return report


def bench_recycler(sides: int, rolls: int, seed: int = 1, *,
                   word_bits: int = 64, chunk_bits: int = 8,
                   jobs: int = 1) -> BenchReport:
    """Benchmark the recycling roller: `rolls` draws on one pool."""
    _check_bench_args(sides, rolls, jobs)

    def single(shard_rolls: int, shard_seed: int) -> BenchReport:
        pool = EntropyPool(word_bits, chunk_bits)
        source = CountingSource(SeededSource(shard_seed))
        counts = [0] * sides
        before = pool.entropy()
        for _ in range(shard_rolls):
            counts[pool.roll(sides, source).outcome] += 1
        return _assemble("recycler", sides, shard_rolls,
                         source.bits_delivered, pool.entropy() - before, counts)

    return _run_sharded(single, rolls, seed, jobs)


def bench_naive(sides: int, rolls: int, seed: int = 1, *,
                jobs: int = 1) -> BenchReport:
    """Benchmark tight-fit rejection: fresh word per try, discard on miss."""
    _check_bench_args(sides, rolls, jobs)
    word = (sides - 1).bit_length()

    def single(shard_rolls: int, shard_seed: int) -> BenchReport:
        source = CountingSource(SeededSource(shard_seed))
        counts = [0] * sides
        for _ in range(shard_rolls):
            draw = source.next_bits(word)
            while draw >= sides:
                draw = source.next_bits(word)
            counts[draw] += 1
        return _assemble("naive", sides, shard_rolls,
                         source.bits_delivered, 0.0, counts)

    return _run_sharded(single, rolls, seed, jobs)


@dataclass
class EnumerationResult:
    """Exact outcome histogram of one reduction pass over all tapes.

    Every pool value in [0, 2**tape_bits) is driven through one
    reduction with refill disabled. Exactness means: each outcome is hit
    by the same number of tapes, and the rejected tapes land exactly
    once on every leftover state.
    """

    tape_bits: int
    sides: int
    counts: list[int]
    discard_states: list[tuple[int, int]]

    @property
    def pool_size(self) -> int:
        return 1 << self.tape_bits

    @property
    def uniform(self) -> bool:
        keep = self.pool_size // self.sides
        return all(c == keep for c in self.counts)

    @property
    def coverage_exact(self) -> bool:
        leftover = self.pool_size % self.sides
        want = [(leftover, v) for v in range(leftover)]
        return sorted(self.discard_states) == want

    @property
    def exact(self) -> bool:
        return self.uniform and self.coverage_exact


def enumerate_exact(tape_bits: int, sides: int) -> EnumerationResult:
    """Drive one reduction over every possible tape of `tape_bits` bits."""
    if not 1 <= tape_bits <= MAX_ENUM_TAPE_BITS:
        raise ValueError(
            f"tape_bits must be in [1, {MAX_ENUM_TAPE_BITS}], got {tape_bits}"
        )
    if not 1 <= sides <= MAX_ENUM_SIDES:
        raise ValueError(f"sides must be in [1, {MAX_ENUM_SIDES}], got {sides}")
    pool_size = 1 << tape_bits
    counts = [0] * sides
    discard_states: list[tuple[int, int]] = []
    for value in range(pool_size):
        pool = EntropyPool.from_snapshot((pool_size, value, tape_bits, 1))
        outcome = pool.roll_step(sides)
        if outcome is None:
            discard_states.append((pool.size, pool.value))
        else:
            counts[outcome] += 1
    return EnumerationResult(tape_bits, sides, counts, discard_states)


def shuffle(deck: int, seed: int = 1, *, source: EntropySource | None = None,
            word_bits: int = 64, chunk_bits: int = 8) -> list[int]:
    """Fisher-Yates permutation of range(deck) driven by one shared pool.

    Rolls a deck-sided die, then deck-1, and so on down to 2: a
    different radix every round, all recycled through the same pool.
    """
    if deck < 1:
        raise ValueError(f"deck must be positive, got {deck}")
    if source is None:
        source = SeededSource(seed)
    pool = EntropyPool(word_bits, chunk_bits)
    order = list(range(deck))
    for i in range(deck - 1, 0, -1):
        j = pool.roll(i + 1, source).outcome
        order[i], order[j] = order[j], order[i]
    return order
