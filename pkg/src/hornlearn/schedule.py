"""Multi-task scheduling strategies over the single-task learner.

Six strategies share one mechanism (grow a search size, learn, move solved
programs into the background knowledge and expose their head predicates to
the remaining tasks) and differ in how the size evolves:

  naive       per task in order, size grows until solved; no transfer at all
  id          one pass over all pending tasks per max size, size always grows
  reset-id    like id, but any solved task resets the size to the minimum
  reset-bfs   searches one exact size per step, resets on solutions
  prio-ex     reset-bfs stepping driven by a priority queue ordered by the
              fraction of positives the best consistent partial covers
  prio-cons   as prio-ex but ordered by how many constraints a task has bred

Constraint preservation (`preserve=True`) keeps each task's store across
size changes and background-knowledge growth; otherwise stores are dropped at
every scheduler-step boundary.
"""

from __future__ import annotations

import heapq
import random
import time
from dataclasses import dataclass, field, replace

from .constraints import ConstraintStore, StoreEvent, preserve_across_update
from .engine import DEFAULT_LIMITS, EvalLimits, RuleDb
from .learn import LearnResult, Task, learn, learn_at_size
from .terms import Program

STRATEGIES = ("naive", "id", "reset-id", "reset-bfs", "prio-ex", "prio-cons")


@dataclass(frozen=True, slots=True)
class MultiTaskProblem:
    tasks: tuple  # Task, distinct names, in input order
    bk: tuple  # Clause
    inject_solved_heads: bool = True

    def __post_init__(self):
        names = [t.name for t in self.tasks]
        if len(set(names)) != len(names):
            raise ValueError("task names must be distinct")


@dataclass(frozen=True, slots=True)
class StrategyConfig:
    strategy: str = "id"
    preserve: bool = False
    timeout_s: float | None = None
    seed: int = 0
    limits: EvalLimits = DEFAULT_LIMITS
    size_cap: int | None = None
    strict_priority_push: bool = False
    on_tested: object = None  # callable(task, hypothesis), instrumentation hook

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")


@dataclass(slots=True)
class TraceEvent:
    elapsed_ms: int
    event: str
    task: str
    size: int
    detail: str

    def line(self):
        return f"{self.elapsed_ms}\t{self.event}\t{self.task}\t{self.size}\t{self.detail}"


class RunTrace:
    """Timestamped event log; `level` controls granularity (0 milestones,
    1 adds constraint counts, 2 adds every tested candidate)."""

    _FINE = {"constraints": 1, "tested": 2}

    def __init__(self, level=0):
        self.level = level
        self.events = []
        self._start = time.monotonic()

    def add(self, event, task, size, detail=""):
        if self._FINE.get(event, 0) > self.level:
            return
        ms = int((time.monotonic() - self._start) * 1000)
        self.events.append(TraceEvent(ms, event, task, size, detail))

    def lines(self):
        return [e.line() for e in self.events]

    def signature(self):
        """Event sequence without timestamps, for determinism checks."""
        return tuple((e.event, e.task, e.size, e.detail) for e in self.events)

    def solve_times_ms(self):
        return [(e.task, e.elapsed_ms) for e in self.events if e.event == "solution"]


@dataclass(slots=True)
class SolutionRecord:
    task: str
    program: Program
    size: int
    search_size: int  # scheduler's size bound when the solution was found
    pass_index: int
    elapsed_ms: int


@dataclass(slots=True)
class MultiTaskResult:
    solutions: dict = field(default_factory=dict)
    trace: RunTrace = None
    tested_total: int = 0
    tested_by_task: dict = field(default_factory=dict)
    timed_out: bool = False
    final_bk: tuple = ()

    @property
    def solved(self):
        return len(self.solutions)


def augment_bk(bk_clauses, solution, pending_tasks):
    """Append a solved task's clauses to the BK and return the updated bias
    map for the still-pending tasks (solved head exposed as a body
    predicate)."""
    heads = {(c.head.pred, c.head.arity) for c in bk_clauses}
    new_heads = {(c.head.pred, c.head.arity) for c in solution}
    clash = heads & new_heads
    if clash:
        raise ValueError(f"predicate already defined in background knowledge: {sorted(clash)}")
    new_bk = tuple(bk_clauses) + tuple(solution.clauses)
    new_biases = {t.name: t.bias.with_body_preds(sorted(new_heads)) for t in pending_tasks}
    return new_bk, new_biases


class _Run:
    """Shared mutable state for one strategy execution."""

    def __init__(self, problem, cfg):
        self.problem = problem
        self.cfg = cfg
        self.trace = RunTrace()
        self.result = MultiTaskResult(trace=self.trace)
        self.bk = tuple(problem.bk)
        self.db = RuleDb(self.bk)
        self.tasks = {t.name: t for t in problem.tasks}
        self.order = [t.name for t in problem.tasks]
        self.pending = list(self.order)
        self.stores = {name: ConstraintStore() for name in self.order}
        self.start = time.monotonic()
        self.deadline = None if cfg.timeout_s is None else self.start + cfg.timeout_s
        self.pass_index = 0

    def elapsed_ms(self):
        return int((time.monotonic() - self.start) * 1000)

    def out_of_time(self):
        return self.deadline is not None and time.monotonic() > self.deadline

    def task(self, name):
        return self.tasks[name]

    def feasible_max(self, name):
        return self.tasks[name].bias.max_size

    def global_feasible_max(self):
        return max((self.feasible_max(n) for n in self.pending), default=0)

    def boundary(self, event):
        """Apply the preservation policy at a scheduler-step boundary."""
        for name in self.pending:
            self.stores[name] = preserve_across_update(
                self.stores[name], event, self.cfg.preserve
            )

    def learn_up_to(self, name, max_size):
        task = self.task(name)
        r = learn(
            task, self.db, max_size, store=self.stores[name], limits=self.cfg.limits,
            deadline=self.deadline, trace=self.trace, on_tested=self.cfg.on_tested,
        )
        self._account(name, r)
        return r

    def learn_exact(self, name, size):
        task = self.task(name)
        if size < 2 or size > self.feasible_max(name):
            return LearnResult(store=self.stores[name])
        r = learn_at_size(
            task, self.db, size, store=self.stores[name], limits=self.cfg.limits,
            deadline=self.deadline, trace=self.trace, on_tested=self.cfg.on_tested,
        )
        self._account(name, r)
        return r

    def _account(self, name, r):
        self.result.tested_total += r.tested
        self.result.tested_by_task[name] = self.result.tested_by_task.get(name, 0) + r.tested
        if r.timed_out:
            self.result.timed_out = True

    def record_solution(self, name, program, search_size):
        rec = SolutionRecord(
            task=name,
            program=program,
            size=program.size,
            search_size=search_size,
            pass_index=self.pass_index,
            elapsed_ms=self.elapsed_ms(),
        )
        # the learner already emitted the "solution" trace event
        self.result.solutions[name] = rec
        self.pending.remove(name)

    def absorb(self, solutions):
        """Grow the BK with newly solved programs and expose their heads."""
        for name, program in solutions:
            self.bk, biases = augment_bk(self.bk, program, [self.task(n) for n in self.pending])
            if self.problem.inject_solved_heads:
                for pending_name, bias in biases.items():
                    t = self.tasks[pending_name]
                    if bias is not t.bias:
                        self.tasks[pending_name] = replace(t, bias=bias)
            self.trace.add("bk-augmented", name, 0, "")
        self.db = RuleDb(self.bk)

    def finish(self):
        self.result.final_bk = self.bk
        return self.result


def run_naive(problem, cfg):
    """Independent learning, one task at a time, no knowledge transfer. Can
    stall on an unsolvable task until the deadline."""
    run = _Run(problem, cfg)
    for name in list(run.pending):
        size = 1
        while not run.out_of_time():
            run.trace.add("size", name, size)
            r = run.learn_up_to(name, size)
            if r.solution is not None:
                run.record_solution(name, r.solution, size)
                break
            if r.timed_out:
                break
            # frozen size means every later iteration would be identical;
            # without a deadline, an exhausted space also ends the stall
            if _capped(size, cfg) or (cfg.timeout_s is None and size >= run.feasible_max(name)):
                break
            size = _grow(size, cfg)
            run.boundary(StoreEvent.SIZE_CHANGE)
        if run.out_of_time():
            run.result.timed_out = True
            break
    return run.finish()


def _id_like(problem, cfg, reset):
    run = _Run(problem, cfg)
    max_size = 1
    while run.pending and not run.out_of_time():
        run.pass_index += 1
        run.trace.add("pass", "", max_size)
        solved_this_pass = []
        for name in list(run.pending):
            if run.out_of_time():
                break
            r = run.learn_up_to(name, max_size)
            if r.solution is not None:
                run.record_solution(name, r.solution, max_size)
                solved_this_pass.append((name, r.solution))
        if not run.pending or run.result.timed_out:
            if solved_this_pass:
                run.absorb(solved_this_pass)
            break
        if solved_this_pass:
            if reset:
                max_size = 1
            run.absorb(solved_this_pass)
            run.boundary(StoreEvent.BK_AUGMENTED)
            if not reset:
                max_size = _grow(max_size, cfg)
        else:
            if _capped(max_size, cfg) or (
                cfg.timeout_s is None and max_size >= run.global_feasible_max()
            ):
                break  # every later pass would be identical
            max_size = _grow(max_size, cfg)
        run.boundary(StoreEvent.SIZE_CHANGE)
    if run.out_of_time():
        run.result.timed_out = True
    return run.finish()


def _grow(size, cfg):
    if cfg.size_cap is not None:
        return min(size + 1, cfg.size_cap)
    return size + 1


def _capped(size, cfg):
    return cfg.size_cap is not None and size >= cfg.size_cap


def run_id(problem, cfg):
    """Iterative deepening: a pass over every pending task per max size; the
    size keeps growing whether or not anything was solved."""
    return _id_like(problem, cfg, reset=False)


def run_reset_id(problem, cfg):
    """Iterative deepening with search-size reset: any pass that solved a
    task restarts the max size at the minimum after growing the BK."""
    return _id_like(problem, cfg, reset=True)


def run_reset_bfs(problem, cfg):
    """Fixed-size stepping with reset: each step searches one exact size; a
    solution breaks the pass, grows the BK, and resets the size."""
    run = _Run(problem, cfg)
    size = 1
    while run.pending and not run.out_of_time():
        run.pass_index += 1
        run.trace.add("pass", "", size)
        solved = None
        for name in list(run.pending):
            if run.out_of_time():
                break
            r = run.learn_exact(name, size)
            if r.solution is not None:
                run.record_solution(name, r.solution, size)
                solved = (name, r.solution)
                break
        if not run.pending or run.result.timed_out:
            if solved:
                run.absorb([solved])
            break
        if solved:
            run.absorb([solved])
            run.boundary(StoreEvent.BK_AUGMENTED)
            size = 1
        else:
            if _capped(size, cfg) or (
                cfg.timeout_s is None and size >= run.global_feasible_max()
            ):
                break
            size = _grow(size, cfg)
        run.boundary(StoreEvent.SIZE_CHANGE)
    if run.out_of_time():
        run.result.timed_out = True
    return run.finish()


def run_prio(problem, cfg, heuristic):
    """Priority-ordered fixed-size stepping. Entries pop by ascending size,
    then descending priority, then input order. A solution reinitializes the
    queue with every pending task back at size 1, priority 1.0."""
    if heuristic not in ("ex", "cons"):
        raise ValueError(f"unknown priority heuristic {heuristic!r}")
    run = _Run(problem, cfg)
    index = {name: i for i, name in enumerate(run.order)}
    best_frac = {name: 0.0 for name in run.order}

    def fresh_queue():
        return [(1, -1.0, index[name], name) for name in run.pending]

    queue = fresh_queue()
    heapq.heapify(queue)
    while queue and not run.out_of_time():
        size, neg_prio, _, name = heapq.heappop(queue)
        run.pass_index += 1
        run.trace.add("step", name, size, f"prio={-neg_prio:g}")
        r = run.learn_exact(name, size)
        if r.timed_out:
            break
        if r.solution is not None:
            run.record_solution(name, r.solution, size)
            run.absorb([(name, r.solution)])
            run.boundary(StoreEvent.BK_AUGMENTED)
            best_frac = {n: 0.0 for n in run.pending}  # coverage shifts with new BK
            queue = fresh_queue()
            heapq.heapify(queue)
            continue
        if r.partial_best is not None:
            task = run.task(name)
            frac = r.partial_covered / len(task.exs.pos)
            best_frac[name] = max(best_frac[name], frac)
        elif cfg.strict_priority_push:
            run.boundary(StoreEvent.SIZE_CHANGE)
            continue  # drop the task, as the bare pseudocode reads
        # the heuristic's current signal: best consistent coverage so far in
        # this BK epoch, or the constraint tally; absent signal ranks 0.0
        priority = best_frac[name] if heuristic == "ex" else float(run.stores[name].count())
        run.boundary(StoreEvent.SIZE_CHANGE)
        if size + 1 <= run.feasible_max(name):
            heapq.heappush(queue, (size + 1, -priority, index[name], name))
    if run.out_of_time():
        run.result.timed_out = True
    return run.finish()


def run_strategy(problem, cfg):
    if cfg.strategy == "naive":
        return run_naive(problem, cfg)
    if cfg.strategy == "id":
        return run_id(problem, cfg)
    if cfg.strategy == "reset-id":
        return run_reset_id(problem, cfg)
    if cfg.strategy == "reset-bfs":
        return run_reset_bfs(problem, cfg)
    heuristic = "ex" if cfg.strategy == "prio-ex" else "cons"
    return run_prio(problem, cfg, heuristic)


def shuffled_problem(problem, seed):
    """Task order randomized by seed; used by the bench harness per trial."""
    rng = random.Random(seed)
    tasks = list(problem.tasks)
    rng.shuffle(tasks)
    return replace(problem, tasks=tuple(tasks))
