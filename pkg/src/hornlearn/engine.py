"""Bounded SLD resolution over definite programs, closed-world.

Proof search is depth-first, clauses in database order, body literals left to
right, so identical inputs always explore the same tree. A query answers
PROVED, DISPROVED (search space exhausted, no refutation), or EXHAUSTED (a
resource limit cut the search before it could be completed).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from enum import Enum

from .terms import (
    Atom,
    Clause,
    Struct,
    Var,
    is_ground_atom,
    is_ground_term,
    resolve,
    undo_trail,
    unify_terms,
)

# Proof chains nest one Python frame per resolved goal.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))


class EvalResult(Enum):
    PROVED = "proved"
    DISPROVED = "disproved"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True, slots=True)
class EvalLimits:
    max_depth: int = 50
    max_steps: int = 100_000

    def __post_init__(self):
        if self.max_depth < 1 or self.max_steps < 1:
            raise ValueError("evaluation limits must be >= 1")


DEFAULT_LIMITS = EvalLimits()


class _StepsExceeded(Exception):
    pass


class RuleDb:
    """Clauses indexed by (predicate, arity).

    Predicates defined purely by ground facts additionally get a set of
    argument tuples for O(1) ground-goal lookup.
    """

    def __init__(self, clauses=()):
        self.by_pred = {}
        self.facts = {}
        for c in clauses:
            self.add(c)

    def add(self, clause):
        key = (clause.head.pred, clause.head.arity)
        bucket = self.by_pred.setdefault(key, [])
        bucket.append(clause)
        if not clause.body and is_ground_atom(clause.head):
            if key not in self.facts and len(bucket) == 1:
                self.facts[key] = set()
            if key in self.facts:
                self.facts[key].add(clause.head.args)
        else:
            self.facts.pop(key, None)

    def defines(self, pred, arity):
        return (pred, arity) in self.by_pred

    def with_extra(self, clauses):
        """Cheap overlay: shares untouched buckets with this database."""
        db = RuleDb.__new__(RuleDb)
        db.by_pred = dict(self.by_pred)
        db.facts = dict(self.facts)
        for c in clauses:
            key = (c.head.pred, c.head.arity)
            if key in self.by_pred and db.by_pred[key] is self.by_pred[key]:
                db.by_pred[key] = list(self.by_pred[key])
            if key in self.facts and db.facts.get(key) is self.facts[key]:
                db.facts[key] = set(self.facts[key])
            db.add(c)
        return db


class _Prover:
    __slots__ = ("db", "limits", "steps", "depth_hit", "fresh", "bindings", "trail")

    def __init__(self, db, limits):
        self.db = db
        self.limits = limits
        self.steps = 0
        self.depth_hit = False
        self.fresh = 0
        self.bindings = {}
        self.trail = []

    def rename(self, clause):
        self.fresh += 1
        tag = self.fresh
        mapping = {}

        def ren(term):
            if isinstance(term, Var):
                v = mapping.get(term)
                if v is None:
                    v = Var(f"_{tag}_{term.name}")
                    mapping[term] = v
                return v
            if isinstance(term, Struct):
                return Struct(term.functor, tuple(ren(a) for a in term.args))
            return term

        head = Atom(clause.head.pred, tuple(ren(t) for t in clause.head.args))
        body = tuple(Atom(b.pred, tuple(ren(t) for t in b.args)) for b in clause.body)
        return head, body

    def tick(self):
        self.steps += 1
        if self.steps > self.limits.max_steps:
            raise _StepsExceeded

    def solve(self, goals):
        """goals: linked list (atom, depth, rest) or None. True iff refutable."""
        if goals is None:
            return True
        goal, depth, rest = goals
        if depth > self.limits.max_depth:
            self.depth_hit = True
            return False
        key = (goal.pred, len(goal.args))
        entry = self.db.by_pred.get(key)
        if entry is None:
            return False
        facts = self.db.facts.get(key)
        bindings, trail = self.bindings, self.trail
        if facts is not None:
            args = tuple(resolve(t, bindings) for t in goal.args)
            if all(is_ground_term(t) for t in args):
                self.tick()
                if args in facts:
                    return self.solve(rest)
                return False
            for clause in entry:
                self.tick()
                mark = len(trail)
                ok = True
                for g, h in zip(args, clause.head.args):
                    if not unify_terms(g, h, bindings, trail):
                        ok = False
                        break
                if ok and self.solve(rest):
                    return True
                undo_trail(trail, mark, bindings)
            return False
        for clause in entry:
            self.tick()
            head, body = self.rename(clause)
            mark = len(trail)
            ok = True
            for g, h in zip(goal.args, head.args):
                if not unify_terms(g, h, bindings, trail):
                    ok = False
                    break
            if ok:
                new_goals = rest
                for b in reversed(body):
                    new_goals = (b, depth + 1, new_goals)
                if self.solve(new_goals):
                    return True
            undo_trail(trail, mark, bindings)
        return False


def _as_db(bk):
    if isinstance(bk, RuleDb):
        return bk
    return RuleDb(bk)


def prove(db, goal, limits=DEFAULT_LIMITS):
    """Tri-state refutation search for a single goal atom."""
    prover = _Prover(db, limits)
    try:
        if prover.solve((goal, 1, None)):
            return EvalResult.PROVED
    except _StepsExceeded:
        return EvalResult.EXHAUSTED
    return EvalResult.EXHAUSTED if prover.depth_hit else EvalResult.DISPROVED


def entails(bk, hypothesis, goal, limits=DEFAULT_LIMITS):
    """Does bk plus hypothesis prove the ground goal within the limits?

    Closed-world: DISPROVED means the finite search space was exhausted
    without a refutation; EXHAUSTED means a limit fired first and coverage is
    unknown.
    """
    if not is_ground_atom(goal):
        raise ValueError(f"goal must be ground: {goal!r}")
    db = _as_db(bk)
    if hypothesis is not None and len(hypothesis):
        db = db.with_extra(hypothesis.clauses)
    return prove(db, goal, limits)


@dataclass(frozen=True, slots=True)
class ExampleSet:
    pos: tuple
    neg: tuple

    def __post_init__(self):
        for a in self.pos + self.neg:
            if not is_ground_atom(a):
                raise ValueError(f"example atoms must be ground: {a!r}")
        preds = {(a.pred, a.arity) for a in self.pos + self.neg}
        if len(preds) > 1:
            raise ValueError(f"examples mix predicates: {sorted(preds)}")
        if set(self.pos) & set(self.neg):
            raise ValueError("positive and negative examples overlap")


@dataclass(frozen=True, slots=True)
class Outcome:
    pos_covered: frozenset
    neg_covered: frozenset
    exhausted: bool

    def is_solution(self, exs):
        return len(self.pos_covered) == len(exs.pos) and not self.neg_covered


def test_hypothesis(hypothesis, bk, exs, limits=DEFAULT_LIMITS):
    """Coverage of a hypothesis against the examples.

    An evaluation that hits a resource limit counts as not covered and sets
    the `exhausted` flag.
    """
    db = _as_db(bk)
    if hypothesis is not None and len(hypothesis):
        db = db.with_extra(hypothesis.clauses)
    pos_covered, neg_covered = [], []
    exhausted = False
    for a in exs.pos:
        r = prove(db, a, limits)
        if r is EvalResult.PROVED:
            pos_covered.append(a)
        elif r is EvalResult.EXHAUSTED:
            exhausted = True
    for a in exs.neg:
        r = prove(db, a, limits)
        if r is EvalResult.PROVED:
            neg_covered.append(a)
        elif r is EvalResult.EXHAUSTED:
            exhausted = True
    return Outcome(frozenset(pos_covered), frozenset(neg_covered), exhausted)
