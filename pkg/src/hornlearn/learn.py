"""Single-task generate/test/constrain loop.

`learn_at_size` streams the candidates of one exact size through the
constraint store's rejection callback, tests the survivors, and turns every
failure into new constraints; `learn` wraps it over sizes 2..max_size, so the
first solution returned is of minimal size with respect to the current
background knowledge and store.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .constraints import ConstraintStore, derive_constraints
from .engine import DEFAULT_LIMITS, ExampleSet, RuleDb, test_hypothesis
from .space import LanguageBias, enumerate_hypotheses


@dataclass(frozen=True, slots=True)
class Task:
    name: str
    arity: int
    exs: ExampleSet
    bias: LanguageBias

    def __post_init__(self):
        if not self.exs.pos:
            raise ValueError(f"task {self.name}: ill-posed, no positive examples")
        for a in self.exs.pos + self.exs.neg:
            if a.pred != self.name or a.arity != self.arity:
                raise ValueError(
                    f"task {self.name}/{self.arity}: example {a!r} uses another predicate"
                )
        if (self.name, self.arity) not in self.bias.head_preds:
            raise ValueError(f"task {self.name}/{self.arity} not declared as a head predicate")

    @property
    def head(self):
        return (self.name, self.arity)


@dataclass(slots=True)
class LearnResult:
    solution: object = None  # Program or None
    partial_best: object = None
    partial_covered: int = 0
    tested: int = 0
    store: ConstraintStore = field(default_factory=ConstraintStore)
    timed_out: bool = False


def _better_partial(result, h, covered):
    if covered == 0:
        return False
    if result.partial_best is None:
        return True
    if covered != result.partial_covered:
        return covered > result.partial_covered
    return h.size < result.partial_best.size  # later ties keep the earlier find


def learn_at_size(task, bk, size, store=None, limits=DEFAULT_LIMITS, deadline=None,
                  on_tested=None, trace=None):
    """Search the exact-size stratum; constraints accumulate in `store`."""
    if size < 2:
        raise ValueError("hypothesis sizes start at 2 (head plus one body literal)")
    db = bk if isinstance(bk, RuleDb) else RuleDb(bk)
    result = LearnResult(store=store if store is not None else ConstraintStore())
    store = result.store
    for h in enumerate_hypotheses(task.bias, size, task.head, rejected=store.prune):
        if deadline is not None and time.monotonic() > deadline:
            result.timed_out = True
            return result
        result.tested += 1
        if on_tested is not None:
            on_tested(task, h)
        outcome = test_hypothesis(h, db, task.exs, limits)
        if trace is not None:
            trace.add("tested", task.name, size, "")
        if outcome.is_solution(task.exs):
            result.solution = h
            if trace is not None:
                trace.add("solution", task.name, h.size, _fmt(h))
            return result
        added = store.add_all(derive_constraints(h, outcome, task.exs))
        if trace is not None and added:
            trace.add("constraints", task.name, size, str(added))
        covered = len(outcome.pos_covered)
        if not outcome.neg_covered and _better_partial(result, h, covered):
            result.partial_best = h
            result.partial_covered = covered
    return result


def learn(task, bk, max_size, store=None, limits=DEFAULT_LIMITS, deadline=None,
          on_tested=None, trace=None):
    """Search sizes 2..max_size in order; the first solution found is minimal
    for the current background knowledge and store."""
    db = bk if isinstance(bk, RuleDb) else RuleDb(bk)
    result = LearnResult(store=store if store is not None else ConstraintStore())
    top = min(max_size, task.bias.max_size)
    for size in range(2, top + 1):
        step = learn_at_size(
            task, db, size, store=result.store, limits=limits, deadline=deadline,
            on_tested=on_tested, trace=trace,
        )
        result.tested += step.tested
        if step.partial_best is not None and _better_partial(
            result, step.partial_best, step.partial_covered
        ):
            result.partial_best = step.partial_best
            result.partial_covered = step.partial_covered
        if step.solution is not None:
            result.solution = step.solution
            return result
        if step.timed_out:
            result.timed_out = True
            return result
    return result


def _fmt(h):
    from .parse import format_program

    return format_program(h)
