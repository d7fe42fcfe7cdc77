import random

import pytest

from hornlearn.constraints import (
    Constraint,
    ConstraintStore,
    Kind,
    StoreEvent,
    derive_constraints,
    preserve_across_update,
    violates,
)
from hornlearn.engine import ExampleSet, Outcome
from hornlearn.parse import parse_atom, parse_clauses
from hornlearn.space import LanguageBias, enumerate_hypotheses
from hornlearn.terms import make_program


def P(text):
    return make_program(parse_clauses(text))


def _exs(pos, neg):
    return ExampleSet(tuple(parse_atom(a) for a in pos), tuple(parse_atom(a) for a in neg))


POS2 = ("f([j,a],['J',a])", "f([b,e],['B','E'])")


def _kinds(cs):
    return {c.kind for c in cs}


def test_derive_on_covered_negative():
    h = P("f(A,B) :- mk_uppercase(A,B).")
    out = Outcome(frozenset(), frozenset({parse_atom("f([j,a],['J',a])")}), False)
    kinds = _kinds(derive_constraints(h, out, _exs((), ("f([j,a],['J',a])",))))
    assert Kind.GENERALISATION in kinds and Kind.BANISH in kinds
    assert Kind.SPECIALISATION not in kinds  # no positive was missed


def test_derive_on_partial_positive_coverage():
    h = P("f(A,B) :- mk_uppercase(A,B).")
    exs = _exs(POS2, ())
    out = Outcome(frozenset({exs.pos[0]}), frozenset(), False)
    assert _kinds(derive_constraints(h, out, exs)) == {Kind.SPECIALISATION, Kind.BANISH}


def test_derive_on_zero_positive_coverage():
    h = P("f(A,B) :- empty(A).")
    exs = _exs(POS2, ())
    out = Outcome(frozenset(), frozenset(), False)
    assert _kinds(derive_constraints(h, out, exs)) == {
        Kind.SPECIALISATION,
        Kind.ELIMINATION,
        Kind.BANISH,
    }


def test_exhausted_outcomes_yield_banish_only():
    h = P("f(A,B) :- rec(A,B).")
    exs = _exs(POS2, ("f([j,a],[j,a])",))
    out = Outcome(frozenset(), frozenset({exs.neg[0]}), True)
    assert _kinds(derive_constraints(h, out, exs)) == {Kind.BANISH}


def test_violates_generalisation():
    h = P("f(A,B) :- mk_uppercase(A,B).")
    c = Constraint(Kind.GENERALISATION, h, h.size)
    assert violates(P("f(A,B) :- mk_uppercase(A,B). f(A,B) :- head(A,B)."), c)
    assert not violates(P("f(A,B) :- mk_uppercase(A,B), empty(B)."), c)


def test_violates_specialisation():
    h = P("f(A,B) :- mk_uppercase(A,B).")
    c = Constraint(Kind.SPECIALISATION, h, h.size)
    assert violates(P("f(A,B) :- mk_uppercase(A,B), empty(B)."), c)
    assert not violates(P("f(A,B) :- mk_uppercase(A,B). f(A,B) :- head(A,B)."), c)


def test_violates_elimination_on_separable_superset():
    c = Constraint(Kind.ELIMINATION, P("f(A,B) :- empty(A)."), 2)
    assert violates(P("f(A,B) :- mk_uppercase(A,B). f(A,B) :- empty(A)."), c)
    assert not violates(P("f(A,B) :- mk_uppercase(A,B)."), c)
    # recursive (non-separable) hypotheses are exempt
    assert not violates(P("f(A,B) :- empty(A). f(A,B) :- q(A,C), f(C,B)."), c)


def test_violates_banish_exact_only():
    h = P("f(A,B) :- q(A,C), p(C,B).")
    c = Constraint(Kind.BANISH, h, h.size)
    assert violates(P("f(A,B) :- p(D,B), q(A,D)."), c)  # alpha-equal
    assert not violates(P("f(A,B) :- q(A,C), p(B,C)."), c)


def test_store_prune_and_dedupe():
    store = ConstraintStore()
    h = P("f(A,B) :- q(A,B).")
    assert not store.prune(h)  # empty store never prunes
    c = Constraint(Kind.BANISH, h, h.size)
    assert store.add(c)
    assert not store.add(c)
    assert store.count() == 1
    assert store.prune(h)
    assert store.counts_by_kind()[Kind.BANISH] == 1


def test_store_agrees_with_violates_pointwise():
    rng = random.Random(5)
    bias = LanguageBias(2, 3, 2, 2, (("f", 2),), (("p", 2), ("q", 1)))
    space = [
        h
        for size in range(2, bias.max_size + 1)
        for h in enumerate_hypotheses(bias, size, ("f", 2))
    ]
    store = ConstraintStore()
    constraints = []
    for h in rng.sample(space, 25):
        kind = rng.choice(list(Kind))
        c = Constraint(kind, h, h.size)
        constraints.append(c)
        store.add(c)
    for cand in rng.sample(space, 300):
        assert store.prune(cand) == any(violates(cand, c) for c in constraints)


def test_no_solution_pruned_by_store_of_genuine_failures():
    # exhaustively check the grandparent instance: constraints bred from every
    # failed hypothesis never reject any of the exact solutions
    from hornlearn.engine import RuleDb
    from hornlearn.engine import test_hypothesis as cover
    from hornlearn.parse import parse_clauses
    from test_learn import KINSHIP_BK, kinship_task

    from oracles import brute_coverage

    task = kinship_task()
    table = brute_coverage(task, RuleDb(KINSHIP_BK))
    store = ConstraintStore()
    solutions = []
    for h, outcome in table:
        if outcome.is_solution(task.exs):
            solutions.append(h)
        else:
            store.add_all(derive_constraints(h, outcome, task.exs))
    assert solutions
    for s in solutions:
        assert not store.prune(s)


def test_adding_constraints_never_unprunes():
    rng = random.Random(23)
    bias = LanguageBias(2, 3, 2, 2, (("f", 2),), (("p", 2), ("q", 1)))
    space = [
        h
        for size in range(2, bias.max_size + 1)
        for h in enumerate_hypotheses(bias, size, ("f", 2))
    ]
    store = ConstraintStore()
    pruned = set()
    probes = rng.sample(space, 80)
    for _ in range(6):
        for h in rng.sample(space, 10):
            store.add(Constraint(rng.choice(list(Kind)), h, h.size))
        now = {i for i, cand in enumerate(probes) if store.prune(cand)}
        assert pruned <= now
        pruned = now


def test_dump_lines_format():
    store = ConstraintStore()
    store.add(Constraint(Kind.BANISH, P("f(A,B) :- q(A,B)."), 2))
    store.add(Constraint(Kind.ELIMINATION, P("f(A,B) :- p(A,C)."), 2))
    lines = store.dump_lines()
    assert lines == sorted(lines)
    for line in lines:
        kind, text = line.split("\t")
        assert kind in {k.value for k in Kind}
        assert text.endswith(".")


def test_preserve_identity_or_reset():
    store = ConstraintStore()
    store.add(Constraint(Kind.BANISH, P("f(A,B) :- q(A,B)."), 2))
    for event in (StoreEvent.SIZE_CHANGE, StoreEvent.BK_AUGMENTED):
        assert preserve_across_update(store, event, preserve=True) is store
        fresh = preserve_across_update(store, event, preserve=False)
        assert fresh is not store and fresh.count() == 0
    with pytest.raises(ValueError):
        preserve_across_update(store, "nonsense", preserve=True)
