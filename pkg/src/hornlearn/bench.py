"""Benchmark harness: repeated timed trials over a dataset, CSV out.

Each (strategy, trial) pair shuffles the task order from (seed, trial), runs
the strategy under the timeout, and replays the trace's solution timestamps
into per-interval solved counts. Results rows are flushed as they are
produced so an interrupted run leaves usable partial output.

results CSV:  strategy,preserve,trial,elapsed_s,solved,total
summary CSV:  strategy,preserve,min,max,stddev,stderr
              (population standard deviation of the final solved counts, and
              its standard error, computed over trials)
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

from .datasets import load_problem
from .schedule import StrategyConfig, run_strategy, shuffled_problem


@dataclass(frozen=True, slots=True)
class BenchConfig:
    dataset: str
    out: str
    strategies: tuple = ("id",)
    preserve: bool = False
    trials: int = 10
    timeout_s: float = 120.0
    sample_interval_s: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.timeout_s <= 0:
            raise ValueError("timeout must be positive")


@dataclass(slots=True)
class TrialOutcome:
    strategy: str
    preserve: bool
    trial: int
    solved: int
    total: int
    samples: list = field(default_factory=list)  # (elapsed_s, solved)


def _trial_seed(seed, trial):
    return seed * 100_003 + trial


def run_trial(problem, strategy, preserve, timeout_s, seed, trial, interval_s):
    ordered = shuffled_problem(problem, _trial_seed(seed, trial))
    cfg = StrategyConfig(strategy=strategy, preserve=preserve, timeout_s=timeout_s,
                         seed=_trial_seed(seed, trial))
    result = run_strategy(ordered, cfg)
    solves = sorted(ms for _, ms in result.trace.solve_times_ms())
    total = len(problem.tasks)
    finish_s = (solves[-1] / 1000.0) if len(solves) == total else timeout_s
    samples = []
    t = interval_s
    while t < finish_s:
        samples.append((t, sum(1 for ms in solves if ms <= t * 1000)))
        t += interval_s
    samples.append((finish_s, len(solves)))
    return TrialOutcome(strategy, preserve, trial, len(solves), total, samples)


def _population_stddev(values):
    mean = sum(values) / len(values)
    return math.sqrt(sum((v - mean) ** 2 for v in values) / len(values))


def summarize(outcomes):
    """Per (strategy, preserve): min/max/stddev/stderr of final solved counts."""
    groups = {}
    for o in outcomes:
        groups.setdefault((o.strategy, o.preserve), []).append(o.solved)
    rows = []
    for (strategy, preserve), finals in sorted(groups.items()):
        sd = _population_stddev(finals)
        rows.append(
            {
                "strategy": strategy,
                "preserve": int(preserve),
                "min": min(finals),
                "max": max(finals),
                "stddev": f"{sd:.6g}",
                "stderr": f"{sd / math.sqrt(len(finals)):.6g}",
            }
        )
    return rows


def run_bench(cfg):
    """Run all strategies/trials; write `<out>` results and `<out stem>_summary.csv`."""
    problem = load_problem(cfg.dataset)
    out_path = Path(cfg.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    summary_path = out_path.with_name(out_path.stem + "_summary.csv")
    outcomes = []
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["strategy", "preserve", "trial", "elapsed_s", "solved", "total"])
        fh.flush()
        try:
            for strategy in cfg.strategies:
                for trial in range(1, cfg.trials + 1):
                    outcome = run_trial(
                        problem, strategy, cfg.preserve, cfg.timeout_s, cfg.seed, trial,
                        cfg.sample_interval_s,
                    )
                    outcomes.append(outcome)
                    for elapsed_s, solved in outcome.samples:
                        writer.writerow(
                            [strategy, int(cfg.preserve), trial, f"{elapsed_s:.3f}",
                             solved, outcome.total]
                        )
                        fh.flush()
        except KeyboardInterrupt:
            fh.flush()
            raise
    with open(summary_path, "w", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["strategy", "preserve", "min", "max", "stddev", "stderr"]
        )
        writer.writeheader()
        for row in summarize(outcomes):
            writer.writerow(row)
    return out_path, summary_path
