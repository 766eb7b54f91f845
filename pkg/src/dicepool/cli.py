"""Command-line front end: roll, shuffle, bench, analyze, enumerate.

CSV goes to stdout, diagnostics to stderr, exit code 0 iff no error.
All randomness flows through the configured source; there is no hidden
fallback randomness in seeded or tape mode.
"""

from __future__ import annotations

import argparse
import sys

from .analysis import binary_entropy, estimate_point, waste_per_roll
from .harness import BenchReport, bench_naive, bench_recycler, enumerate_exact, shuffle
from .pool import EntropyPool
from .radix import RadixPlan, roll_batch
from .sources import EntropySource, OsSource, SeededSource, TapeSource


def parse_size(text: str) -> int:
    """Integer literal, optionally in base^exponent form like 2^24."""
    if "^" in text:
        base, _, exponent = text.partition("^")
        return int(base) ** int(exponent)
    return int(text)


def make_source(name: str, seed: int) -> EntropySource:
    if name == "seeded":
        return SeededSource(seed)
    if name == "os":
        return OsSource()
    if name.startswith("tape:"):
        path = name[len("tape:"):]
        with open(path, "rb") as handle:
            return TapeSource(handle.read())
    raise ValueError(f"unknown source '{name}' (expected seeded, os, or tape:PATH)")


def cmd_roll(args: argparse.Namespace) -> int:
    source = make_source(args.source, args.seed)
    pool = EntropyPool(args.word_bits, args.chunk_bits)
    if args.plan is not None:
        plan = RadixPlan(int(part) for part in args.plan.split(","))
        for _ in range(args.count):
            digits = roll_batch(pool, plan, source)
            print(" ".join(str(d) for d in digits))
        return 0
    if args.sides is None:
        raise ValueError("either -n/--sides or --plan is required")
    for _ in range(args.count):
        print(pool.roll(args.sides, source).outcome)
    return 0


def cmd_shuffle(args: argparse.Namespace) -> int:
    source = make_source(args.source, args.seed)
    order = shuffle(args.deck, source=source,
                    word_bits=args.word_bits, chunk_bits=args.chunk_bits)
    print(" ".join(str(card) for card in order))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    reports = [
        bench_recycler(args.sides, args.rolls, args.seed,
                       word_bits=args.word_bits, chunk_bits=args.chunk_bits,
                       jobs=args.jobs)
    ]
    if args.baseline:
        reports.append(bench_naive(args.sides, args.rolls, args.seed, jobs=args.jobs))
    if args.output == "csv":
        print(BenchReport.csv_header())
        for report in reports:
            print(report.csv_row())
    else:
        for report in reports:
            print(report.summary())
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    sides = args.sides
    if sides < 2:
        raise ValueError(f"analyze needs -n >= 2, got {sides}")
    m_from = args.m_from
    m_to = args.m_to if args.m_to is not None else m_from
    if m_from < 1 or m_to < m_from:
        raise ValueError(f"invalid pool range [{m_from}, {m_to}]")
    print("m,p,binary_entropy,waste_per_roll,eta_estimate,in_regime")
    pool_size = m_from
    while pool_size <= m_to:
        p = (pool_size - pool_size % sides) / pool_size
        waste = waste_per_roll(p) if p > 0.0 else float("inf")
        point = estimate_point(sides, pool_size)
        print(f"{pool_size},{p:.10g},{binary_entropy(p):.10g},{waste:.10g},"
              f"{point.eta:.10g},{int(point.in_regime)}")
        pool_size *= 2
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    result = enumerate_exact(args.tape_bits, args.sides)
    leftover = result.pool_size % result.sides
    print("counts: " + " ".join(str(c) for c in result.counts))
    print(f"discards: {len(result.discard_states)} tapes onto [0, {leftover})")
    print("PASS" if result.exact else "FAIL")
    return 0 if result.exact else 1


def _add_pool_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-W", "--word-bits", type=int, default=64,
                        help="pool capacity bound in bits (default 64)")
    parser.add_argument("-B", "--chunk-bits", type=int, default=8,
                        help="refill granularity in bits (default 8)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dicepool",
        description="Fair die rolls from coin flips with entropy recycling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    roll = sub.add_parser("roll", help="print fair die rolls, one per line")
    roll.add_argument("-n", "--sides", type=int, help="die range")
    roll.add_argument("--plan", metavar="N1,N2,...",
                      help="ranges rolled as one batched product draw")
    roll.add_argument("-c", "--count", type=int, default=1,
                      help="number of rolls (default 1)")
    roll.add_argument("--source", default="os", help="seeded | os | tape:PATH")
    roll.add_argument("--seed", type=int, default=1,
                      help="seed for --source seeded (default 1)")
    _add_pool_options(roll)
    roll.set_defaults(func=cmd_roll)

    shuf = sub.add_parser("shuffle", help="print a fair permutation of a deck")
    shuf.add_argument("--deck", type=int, required=True, help="deck size")
    shuf.add_argument("--source", default="os", help="seeded | os | tape:PATH")
    shuf.add_argument("--seed", type=int, default=1)
    _add_pool_options(shuf)
    shuf.set_defaults(func=cmd_shuffle)

    bench = sub.add_parser("bench", help="measure consumption and uniformity")
    bench.add_argument("-n", "--sides", type=int, required=True)
    bench.add_argument("--rolls", type=int, required=True)
    bench.add_argument("--seed", type=int, default=1,
                       help="seeded source for reproducibility (default 1)")
    bench.add_argument("--baseline", action="store_true",
                       help="also run the discard-everything rejection sampler")
    bench.add_argument("--jobs", type=int, default=1,
                       help="shard rolls over independent pools, merging counts")
    bench.add_argument("--output", choices=("csv", "plain"), default="csv")
    _add_pool_options(bench)
    bench.set_defaults(func=cmd_bench)

    analyze = sub.add_parser("analyze", help="tabulate the analytical waste model")
    analyze.add_argument("-n", "--sides", type=int, required=True)
    analyze.add_argument("--m-from", type=parse_size, required=True,
                         help="first pool size (accepts 2^K)")
    analyze.add_argument("--m-to", type=parse_size, default=None,
                         help="last pool size, swept by doubling (default: m-from)")
    analyze.set_defaults(func=cmd_analyze)

    enum = sub.add_parser("enumerate",
                          help="exhaustive uniformity check over all short tapes")
    enum.add_argument("-l", "--tape-bits", type=int, required=True,
                      help="tape length in bits (<= 16)")
    enum.add_argument("-n", "--sides", type=int, required=True,
                      help="die range (<= 20)")
    enum.set_defaults(func=cmd_enumerate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())
