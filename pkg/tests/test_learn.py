import time

import pytest

from hornlearn.constraints import ConstraintStore
from hornlearn.engine import ExampleSet, RuleDb
from hornlearn.learn import Task, learn, learn_at_size
from hornlearn.parse import format_program, parse_atom, parse_clauses
from hornlearn.space import LanguageBias
from hornlearn.terms import make_program, program_key

from oracles import brute_solutions

KINSHIP_BK = parse_clauses(
    """
    isFather('John','Dan'). isFather('Paul','John'). isWife('Alice','Paul').
    isFather('Bob','Tom'). isWife('Sue','Bob').
    """
)

PERSONS = ["John", "Dan", "Paul", "Alice", "Bob", "Tom", "Sue"]


def kinship_task():
    pos = (parse_atom("isGrandfather('Paul','Dan')"),)
    neg = tuple(
        parse_atom(f"isGrandfather('{a}','{b}')")
        for a in PERSONS
        for b in PERSONS
        if (a, b) != ("Paul", "Dan")
    )
    bias = LanguageBias(
        2, 3, 2, 1,
        head_preds=(("isGrandfather", 2),),
        body_preds=(("isFather", 2), ("isWife", 2)),
    )
    return Task("isGrandfather", 2, ExampleSet(pos, neg), bias)


def test_learns_grandfather_chain_at_size_three():
    r = learn(kinship_task(), KINSHIP_BK, max_size=3)
    assert format_program(r.solution) == "isGrandfather(A,B) :- isFather(A,C), isFather(C,B)."


def test_no_solution_below_size_three():
    r = learn(kinship_task(), KINSHIP_BK, max_size=2)
    assert r.solution is None
    _, min_size, _ = brute_solutions(kinship_task(), KINSHIP_BK)
    assert min_size == 3  # confirms the brute-force floor the search respects


def test_solution_size_matches_brute_force_minimum():
    r = learn(kinship_task(), KINSHIP_BK, max_size=6)
    _, min_size, _ = brute_solutions(kinship_task(), KINSHIP_BK)
    assert r.solution.size == min_size


def test_empty_positive_examples_rejected():
    with pytest.raises(ValueError):
        Task(
            "f", 1,
            ExampleSet((), (parse_atom("f(a)"),)),
            LanguageBias(1, 1, 1, 1, (("f", 1),), (("q", 1),)),
        )


def test_task_requires_declared_head():
    with pytest.raises(ValueError):
        Task(
            "f", 1,
            ExampleSet((parse_atom("f(a)"),), ()),
            LanguageBias(1, 1, 1, 1, (("g", 1),), (("q", 1),)),
        )


def _toy_task():
    """Positives solvable by p-chains; q never helps (covers nothing)."""
    bk = parse_clauses("p(a,b). p(b,c). p(c,d). q(x,x).")
    pos = (parse_atom("f(a,c)"),)
    neg = (parse_atom("f(a,b)"), parse_atom("f(a,d)"), parse_atom("f(b,c)"))
    bias = LanguageBias(2, 3, 2, 2, (("f", 2),), (("p", 2), ("q", 2)))
    return Task("f", 2, ExampleSet(pos, neg), bias), bk


def test_constraint_store_skips_candidates_without_changing_result():
    task, bk = _toy_task()
    plain = learn(task, bk, max_size=6)
    store = ConstraintStore()
    warm = learn(task, bk, max_size=6, store=store)
    assert program_key(plain.solution) == program_key(warm.solution)
    # rerun with the already-populated store: strictly fewer tests, same answer
    rerun = learn(task, bk, max_size=6, store=store)
    assert program_key(rerun.solution) == program_key(plain.solution)
    assert rerun.tested <= warm.tested


def test_no_candidate_tested_twice_within_run():
    task, bk = _toy_task()
    seen = []
    learn(task, bk, max_size=6, on_tested=lambda t, h: seen.append(program_key(h)))
    assert len(seen) == len(set(seen))


def test_eliminated_subhypothesis_never_retested_in_separable_candidates():
    task, bk = _toy_task()
    store = ConstraintStore()
    tested = []
    learn(task, bk, max_size=6, store=store, on_tested=lambda t, h: tested.append(h))
    dead = make_program(parse_clauses("f(A,B) :- q(A,B)."))
    dead_key = program_key(dead)[0]
    # the dead clause was tested alone exactly once, and no separable
    # candidate containing it was tested afterwards
    seen_dead = [h for h in tested if dead_key in program_key(h)]
    assert len(seen_dead) == 1 and program_key(seen_dead[0]) == program_key(dead)


def test_partial_best_tracks_consistent_coverage():
    bk = parse_clauses("p(a,b). p(b,c). r(a,x).")
    pos = (parse_atom("f(a,b)"), parse_atom("f(b,c)"), parse_atom("f(a,x)"))
    neg = (parse_atom("f(b,b)"),)
    bias = LanguageBias(2, 2, 1, 1, (("f", 2),), (("p", 2), ("r", 2)))
    task = Task("f", 2, ExampleSet(pos, neg), bias)
    r = learn(task, bk, max_size=2)
    assert r.solution is None
    assert format_program(r.partial_best) == "f(A,B) :- p(A,B)."
    assert r.partial_covered == 2


def test_learn_at_size_empty_stratum_changes_nothing():
    task, bk = _toy_task()
    store = ConstraintStore()
    learn_at_size(task, bk, size=2, store=store)
    before = store.count()
    r = learn_at_size(task, bk, size=task.bias.max_size + 1, store=store)
    assert r.solution is None and r.tested == 0
    assert store.count() == before


def test_deadline_cuts_search_and_flags_timeout():
    task, bk = _toy_task()
    r = learn(task, bk, max_size=6, deadline=time.monotonic() - 1)
    assert r.timed_out and r.solution is None


def test_solution_independently_re_verified():
    from hornlearn.engine import test_hypothesis as coverage

    task, bk = _toy_task()
    r = learn(task, bk, max_size=6)
    out = coverage(r.solution, RuleDb(bk), task.exs)
    assert out.is_solution(task.exs)
