"""Clause and hypothesis generality via theta-subsumption.

Clause c1 subsumes c2 when a substitution maps c1's head onto c2's head and
every c1 body literal onto some c2 body literal (as a set, not injectively).
Hypothesis h2 is a generalisation of h1 when every h1 clause is subsumed by
some h2 clause, and a specialisation when the converse holds clause-wise.

Matching is one-way: only pattern-side variables bind, target terms are
opaque, so no standardizing-apart is needed even when both clauses use the
same variable names.
"""

from __future__ import annotations

from functools import lru_cache

from .terms import Const, Struct, Var


@lru_cache(maxsize=1 << 20)
def _body_preds(c):
    return frozenset((b.pred, len(b.args)) for b in c.body)


@lru_cache(maxsize=1 << 20)
def _targets_by_pred(c):
    targets = {}
    for t in c.body:
        targets.setdefault((t.pred, len(t.args)), []).append(t)
    return targets


@lru_cache(maxsize=1 << 20)
def _flat_form(c):
    """(head var ids, ((pred, arity, arg ids), ...)) for clauses whose
    arguments are all plain variables (every enumerated hypothesis clause is),
    or None when structured terms or constants appear."""
    ids = {}

    def vid(term):
        if not isinstance(term, Var):
            return None
        return ids.setdefault(term, len(ids))

    head = []
    for t in c.head.args:
        i = vid(t)
        if i is None:
            return None
        head.append(i)
    body = []
    for b in c.body:
        args = []
        for t in b.args:
            i = vid(t)
            if i is None:
                return None
            args.append(i)
        body.append((b.pred, len(args), tuple(args)))
    return tuple(head), tuple(body)


def _flat_subsumes(f1, f2):
    head1, body1 = f1
    head2, body2 = f2
    theta = {}
    for a, b in zip(head1, head2):
        bound = theta.get(a)
        if bound is None:
            theta[a] = b
        elif bound != b:
            return False
    targets = {}
    for pred, arity, args in body2:
        targets.setdefault((pred, arity), []).append(args)
    order = sorted(body1, key=lambda lit: len(targets.get((lit[0], lit[1]), ())))

    def match(i, theta):
        if i == len(order):
            return True
        pred, arity, args = order[i]
        for target_args in targets.get((pred, arity), ()):
            trial = dict(theta)
            ok = True
            for a, b in zip(args, target_args):
                bound = trial.get(a)
                if bound is None:
                    trial[a] = b
                elif bound != b:
                    ok = False
                    break
            if ok and match(i + 1, trial):
                return True
        return False

    return match(0, theta)


def _match_term(pattern, target, theta, trail):
    if isinstance(pattern, Var):
        bound = theta.get(pattern)
        if bound is None:
            theta[pattern] = target
            trail.append(pattern)
            return True
        return bound == target
    if isinstance(pattern, Const):
        return pattern == target
    if (
        not isinstance(target, Struct)
        or pattern.functor != target.functor
        or len(pattern.args) != len(target.args)
    ):
        return False
    return all(_match_term(p, t, theta, trail) for p, t in zip(pattern.args, target.args))


def _match_args(pattern, target, theta, trail):
    mark = len(trail)
    for p, t in zip(pattern.args, target.args):
        if not _match_term(p, t, theta, trail):
            while len(trail) > mark:
                del theta[trail.pop()]
            return False
    return True


def theta_subsumes(c1, c2):
    """True iff some substitution theta gives c1·theta ⊆ c2 (head to head,
    body literals as a subset)."""
    if c1.head.pred != c2.head.pred or c1.head.arity != c2.head.arity:
        return False
    if not _body_preds(c1) <= _body_preds(c2):
        return False
    f1, f2 = _flat_form(c1), _flat_form(c2)
    if f1 is not None and f2 is not None:
        return _flat_subsumes(f1, f2)
    theta, trail = {}, []
    if not _match_args(c1.head, c2.head, theta, trail):
        return False
    targets_by_pred = _targets_by_pred(c2)
    body1 = c1.body
    if len(body1) > 1:
        # fewest candidate targets first: failing matches fail early
        body1 = sorted(body1, key=lambda b: len(targets_by_pred[(b.pred, len(b.args))]))

    def match_body(i):
        if i == len(body1):
            return True
        lit = body1[i]
        mark = len(trail)
        for target in targets_by_pred.get((lit.pred, len(lit.args)), ()):
            if _match_args(lit, target, theta, trail):
                if match_body(i + 1):
                    return True
                while len(trail) > mark:
                    del theta[trail.pop()]
        return False

    return match_body(0)


def is_generalisation(h1, h2):
    """True iff h2 is at least as general as h1: every clause of h1 is
    theta-subsumed by some clause of h2."""
    return all(any(theta_subsumes(c2, c1) for c2 in h2) for c1 in h1)


def is_specialisation(h1, h2):
    """True iff h2 is at most as general as h1: every clause of h2 is
    theta-subsumed by some clause of h1."""
    return all(any(theta_subsumes(c1, c2) for c1 in h1) for c2 in h2)


def is_separable(h):
    """No head predicate of h occurs in any clause body of h."""
    heads = {(c.head.pred, c.head.arity) for c in h}
    for c in h:
        for b in c.body:
            if (b.pred, b.arity) in heads:
                return False
    return True
