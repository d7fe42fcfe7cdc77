"""Command-line interface.

    hornlearn gen kinship --generations 2 --out DIR
    hornlearn gen robot --distances 2,4,8 --out DIR
    hornlearn gen printer --patterns zebra,cube --width 3 --height 3 --out DIR
    hornlearn gen strings --out DIR
    hornlearn learn --strategy id --dataset DIR [--preserve --timeout-s N --seed S]
    hornlearn bench --strategy id,reset-bfs --dataset DIR --out results.csv
                    [--preserve --trials K --timeout-s N --sample-interval-s T --seed S]

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .bench import BenchConfig, run_bench
from .datasets import gen_kinship, gen_printer, gen_robot, gen_strings, load_problem
from .parse import format_clause
from .schedule import STRATEGIES, StrategyConfig, run_strategy


def _build_parser():
    parser = argparse.ArgumentParser(prog="hornlearn")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a task directory")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    g = gen_sub.add_parser("kinship")
    g.add_argument("--generations", type=int, default=2)
    g.add_argument("--out", required=True)
    g = gen_sub.add_parser("robot")
    g.add_argument("--distances", default="2,4,8")
    g.add_argument("--max-body", type=int, default=None)
    g.add_argument("--out", required=True)
    g = gen_sub.add_parser("printer")
    g.add_argument("--patterns", default="cube")
    g.add_argument("--width", type=int, default=3)
    g.add_argument("--height", type=int, default=3)
    g.add_argument("--out", required=True)
    g = gen_sub.add_parser("strings")
    g.add_argument("--out", required=True)

    learn = sub.add_parser("learn", help="run one strategy once and print solutions")
    learn.add_argument("--strategy", choices=STRATEGIES, required=True)
    learn.add_argument("--dataset", required=True)
    learn.add_argument("--preserve", action="store_true")
    learn.add_argument("--timeout-s", type=float, default=None)
    learn.add_argument("--seed", type=int, default=0)

    bench = sub.add_parser("bench", help="timed trials over a dataset, CSV out")
    bench.add_argument("--strategy", default="id",
                       help="comma-separated subset of " + ",".join(STRATEGIES))
    bench.add_argument("--dataset", required=True)
    bench.add_argument("--out", required=True)
    bench.add_argument("--preserve", action="store_true")
    bench.add_argument("--trials", type=int, default=10)
    bench.add_argument("--timeout-s", type=float, default=120.0)
    bench.add_argument("--sample-interval-s", type=float, default=10.0)
    bench.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_gen(args):
    if args.family == "kinship":
        gen_kinship(args.generations, args.out)
    elif args.family == "robot":
        distances = [int(x) for x in args.distances.split(",") if x]
        gen_robot(distances, args.out, max_body=args.max_body)
    elif args.family == "printer":
        patterns = [p for p in args.patterns.split(",") if p]
        gen_printer(patterns, args.width, args.height, args.out)
    else:
        gen_strings(args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_learn(args):
    problem = load_problem(args.dataset)
    cfg = StrategyConfig(
        strategy=args.strategy, preserve=args.preserve, timeout_s=args.timeout_s,
        seed=args.seed,
    )
    result = run_strategy(problem, cfg)
    for name in [t.name for t in problem.tasks]:
        rec = result.solutions.get(name)
        if rec is None:
            print(f"% {name}: no solution")
            continue
        print(f"% {name}: size {rec.size}, {rec.elapsed_ms} ms")
        for clause in rec.program:
            print(format_clause(clause))
    print(f"% solved {result.solved}/{len(problem.tasks)}, "
          f"tested {result.tested_total} candidates")
    return 0


def _cmd_bench(args):
    strategies = tuple(s for s in args.strategy.split(",") if s)
    for s in strategies:
        if s not in STRATEGIES:
            print(f"unknown strategy: {s}", file=sys.stderr)
            return 2
    cfg = BenchConfig(
        dataset=args.dataset,
        out=args.out,
        strategies=strategies,
        preserve=args.preserve,
        trials=args.trials,
        timeout_s=args.timeout_s,
        sample_interval_s=args.sample_interval_s,
        seed=args.seed,
    )
    results, summary = run_bench(cfg)
    print(f"wrote {results} and {summary}")
    return 0


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "learn":
            return _cmd_learn(args)
        return _cmd_bench(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
