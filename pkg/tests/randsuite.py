"""Seeded random desk-scale tasks for the acceptance suite.

Biases stay within |body preds| <= 3, v <= 3, m <= 2, n <= 2. Most tasks are
solvable by construction: the examples are sampled from the coverage of a
program drawn from the task's own space. A minority use unconstrained random
examples and may be unsolvable.
"""

import random
from dataclasses import dataclass

from hornlearn.engine import ExampleSet, RuleDb
from hornlearn.engine import test_hypothesis as coverage
from hornlearn.learn import Task
from hornlearn.space import LanguageBias
from hornlearn.terms import Atom, Const

from oracles import brute_space

CONSTS = [Const(c) for c in ("c0", "c1", "c2", "c3")]


@dataclass
class RandomInstance:
    task: Task
    bk: tuple
    seeded_solvable: bool


def _random_bias(rng, head):
    n_preds = rng.randint(1, 3)
    body = tuple((f"p{i}", rng.randint(1, 2)) for i in range(n_preds))
    return LanguageBias(
        max_arity=2,
        max_vars=rng.randint(2, 3),
        max_body=rng.randint(1, 2),
        max_clauses=rng.randint(1, 2),
        head_preds=(head,),
        body_preds=body,
    )


def _random_bk(rng, bias):
    clauses = []
    for name, arity in bias.body_preds:
        universe = [
            (a, b) if arity == 2 else (a,)
            for a in CONSTS
            for b in (CONSTS if arity == 2 else [None])
        ]
        k = rng.randint(1, min(5, len(universe)))
        for args in rng.sample(universe, k):
            clauses.append(
                Atom(name, args if arity == 2 else (args[0],))
            )
    from hornlearn.terms import Clause

    return tuple(Clause(h) for h in clauses)


def _ground_universe(head):
    name, arity = head
    if arity == 1:
        return [Atom(name, (a,)) for a in CONSTS]
    return [Atom(name, (a, b)) for a in CONSTS for b in CONSTS]


def make_instance(seed):
    rng = random.Random(seed)
    head = (f"t{seed}", rng.randint(1, 2))
    bias = _random_bias(rng, head)
    bk = _random_bk(rng, bias)
    universe = _ground_universe(head)
    seeded = rng.random() < 0.75
    if seeded:
        space = brute_space(bias, head)
        target = rng.choice(space)
        out = coverage(target, RuleDb(bk), ExampleSet(tuple(universe), ()))
        covered = sorted(out.pos_covered, key=str)
        uncovered = sorted(set(universe) - out.pos_covered, key=str)
        if covered:
            pos = rng.sample(covered, rng.randint(1, min(3, len(covered))))
            neg = rng.sample(uncovered, min(len(uncovered), rng.randint(1, 4)))
            task = Task(head[0], head[1], ExampleSet(tuple(pos), tuple(neg)), bias)
            return RandomInstance(task, bk, True)
    rng.shuffle(universe)
    pos = tuple(universe[: rng.randint(1, 3)])
    neg = tuple(universe[len(pos): len(pos) + rng.randint(1, 4)])
    task = Task(head[0], head[1], ExampleSet(pos, neg), bias)
    return RandomInstance(task, bk, False)


def make_suite(count, seed=2024):
    return [make_instance(seed * 1000 + i) for i in range(count)]
