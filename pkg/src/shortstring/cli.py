"""Command line: decode a lattice file, generate lattices, run benchmarks.

Exit codes for ``decode``: 0 success, 1 oracle mismatch, 2 empty
language, 3 invalid input, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automaton import SymbolTable, read_text, validate, write_text
from .determinize import DfaCache, dump_text
from .distance import backward_distance, forward_distance
from .errors import BudgetExceededError, EmptyLanguageError, ParseError
from .latgen import LatticeSpec, bench_csv, bench_run, generate
from .oracle import oracle_shortest_string
from .search import shortest_string, shortest_string_via_full_determinization
from .semiring import format_weight, get_semiring

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_EMPTY = 2
EXIT_INVALID = 3
EXIT_BUDGET = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shortstring",
        description="Shortest-string decoding of acyclic weighted lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    decode = sub.add_parser("decode", help="decode a lattice file")
    decode.add_argument("input", help="lattice file in the text acceptor format")
    decode.add_argument("--symbols", help="symbol table file (token id lines)")
    decode.add_argument("--semiring", choices=("log", "real"), default="log")
    decode.add_argument("--oracle", action="store_true",
                        help="cross-check against brute-force enumeration")
    decode.add_argument("--stats", action="store_true",
                        help="print search statistics as JSON to stderr")
    decode.add_argument("--trace", action="store_true",
                        help="print one line per popped state to stderr")
    decode.add_argument("--full", action="store_true",
                        help="determinize exhaustively before searching")
    decode.add_argument("--budget", type=int, default=1_000_000,
                        help="state and path budget (default 1000000)")
    decode.add_argument("--delta-det", type=float, default=1e-6,
                        help="residual merge tolerance (default 1e-6)")
    decode.add_argument("--tolerance", type=float, default=1e-6,
                        help="oracle weight comparison tolerance (default 1e-6)")
    decode.add_argument("--print-distances", action="store_true",
                        help="print per-state forward and backward distances "
                             "to stderr")
    decode.add_argument("--dump-dfa", metavar="FILE",
                        help="write the explored determinized sub-automaton "
                             "to FILE")

    gen = sub.add_parser("gen", help="generate a synthetic lattice on stdout")
    gen.add_argument("--depth", type=int, required=True)
    gen.add_argument("--width", type=int, required=True)
    gen.add_argument("--vocab", type=int, required=True)
    gen.add_argument("--skew", type=float, default=1.0)
    gen.add_argument("--merge-prob", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)

    bench = sub.add_parser("bench", help="benchmark sweep; CSV on stdout")
    bench.add_argument("--depths", required=True,
                       help="comma-separated depth list, e.g. 4,6,8")
    bench.add_argument("--width", type=int, required=True)
    bench.add_argument("--vocab", type=int, required=True)
    bench.add_argument("--seeds", type=int, default=1,
                       help="number of seeds per depth, 0..N-1 (default 1)")
    bench.add_argument("--skew", type=float, default=1.0)
    bench.add_argument("--merge-prob", type=float, default=0.0)
    bench.add_argument("--budget", type=int, default=1_000_000)
    return parser


def _render(labels, symbols) -> str:
    tokens = []
    for label in labels:
        if symbols is not None and symbols.has_label(label):
            tokens.append(symbols.token(label))
        else:
            tokens.append(str(label))
    return " ".join(tokens)


def _trace_writer(symbols):
    def on_pop(handle, gscore, heuristic, fscore, labels):
        name = "goal" if handle is None else str(handle)
        sys.stderr.write(f"pop\t{name}\t{gscore:.6f}\t{heuristic:.6f}\t"
                         f"{fscore:.6f}\t{_render(labels, symbols)}\n")
    return on_pop


def _cmd_decode(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as handle:
            text = handle.read()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    symbols = None
    if args.symbols:
        try:
            with open(args.symbols, encoding="utf-8") as handle:
                symbols = SymbolTable.from_text(handle.read())
        except (OSError, UnicodeDecodeError, ParseError) as exc:
            print(f"error: bad symbol table: {exc}", file=sys.stderr)
            return EXIT_INVALID
    if args.budget < 1:
        print("error: budget must be positive", file=sys.stderr)
        return EXIT_INVALID
    semiring = get_semiring(args.semiring)
    try:
        automaton = read_text(text, semiring, symbols)
    except ParseError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report = validate(automaton)
    if not report.ok:
        print(f"error: {args.input}: {report}", file=sys.stderr)
        return EXIT_INVALID
    if args.print_distances:
        alpha = forward_distance(automaton)
        beta = backward_distance(automaton)
        for q in range(automaton.num_states):
            sys.stderr.write(f"distance\t{q}\t{format_weight(alpha[q])}\t"
                             f"{format_weight(beta[q])}\n")
    on_pop = _trace_writer(symbols) if args.trace else None
    search = (shortest_string_via_full_determinization if args.full
              else shortest_string)
    cache = DfaCache(automaton, args.delta_det, args.budget)
    try:
        result = search(automaton, on_pop=on_pop, cache=cache)
    except EmptyLanguageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.dump_dfa:
        try:
            with open(args.dump_dfa, "w", encoding="utf-8") as handle:
                handle.write(dump_text(cache, symbols))
        except OSError as exc:
            print(f"error: cannot write {args.dump_dfa}: {exc}", file=sys.stderr)
            return EXIT_INVALID
    print(f"{_render(result.labels, symbols)}\t{result.weight:.6f}")
    if args.stats:
        print(json.dumps(result.stats.as_dict()), file=sys.stderr)
    if args.oracle:
        try:
            labels, weight = oracle_shortest_string(automaton,
                                                    path_budget=args.budget)
        except BudgetExceededError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        print(f"oracle\t{_render(labels, symbols)}\t{weight:.6f}")
        if labels != result.labels or abs(weight - result.weight) > args.tolerance:
            print("error: search and oracle disagree", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def _cmd_gen(args) -> int:
    spec = LatticeSpec(depth=args.depth, width=args.width, vocab=args.vocab,
                       skew=args.skew, merge_prob=args.merge_prob,
                       seed=args.seed)
    try:
        spec.check()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(write_text(generate(spec)))
    return EXIT_OK


def _cmd_bench(args) -> int:
    try:
        depths = [int(field) for field in args.depths.split(",") if field]
    except ValueError:
        print(f"error: bad depth list {args.depths!r}", file=sys.stderr)
        return EXIT_INVALID
    if not depths or args.seeds < 1:
        print("error: need at least one depth and one seed", file=sys.stderr)
        return EXIT_INVALID
    if args.budget < 1:
        print("error: budget must be positive", file=sys.stderr)
        return EXIT_INVALID
    specs = [LatticeSpec(depth=depth, width=args.width, vocab=args.vocab,
                         skew=args.skew, merge_prob=args.merge_prob, seed=seed)
             for depth in depths for seed in range(args.seeds)]
    try:
        for spec in specs:
            spec.check()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    rows = bench_run(specs, state_budget=args.budget)
    sys.stdout.write(bench_csv(rows))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "decode":
        return _cmd_decode(args)
    if args.command == "gen":
        return _cmd_gen(args)
    return _cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
