"""Independent brute-force reference implementations for the tests.

These deliberately avoid the package's enumeration strategy: clauses are
built by raw cartesian products over every literal shape and deduplicated by
alpha key, programs by plain subset choice, and solving by testing every
program in the space. Slow but obviously correct at desk scale.
"""

from itertools import combinations, product

from hornlearn.engine import RuleDb, test_hypothesis
from hornlearn.terms import (
    Atom,
    Clause,
    Program,
    Var,
    canonical_var_name,
    clause_from_key,
    clause_key,
)


def brute_clauses(bias, head_pred):
    """Every canonical clause the bias admits for the head, any body length."""
    name, arity = head_pred
    head = Atom(name, tuple(Var(canonical_var_name(i)) for i in range(arity)))
    variables = [Var(canonical_var_name(i)) for i in range(bias.max_vars)]
    preds = list(bias.body_preds)
    if bias.enable_recursion and head_pred not in preds:
        preds.append(head_pred)
    literals = [
        Atom(p, args)
        for p, a in sorted(preds)
        for args in product(variables, repeat=a)
    ]
    seen = {}
    for blen in range(1, bias.max_body + 1):
        for body in combinations(literals, blen):
            c = Clause(head, tuple(body))
            if len(set(c.body)) != len(c.body):
                continue
            distinct = set()
            for atom in (c.head, *c.body):
                for t in atom.args:
                    if isinstance(t, Var):
                        distinct.add(t)
            if len(distinct) > bias.max_vars:
                continue
            key = clause_key(c)
            if key not in seen:
                seen[key] = clause_from_key(key)
    return [c for _, c in sorted(seen.items(), key=lambda kv: kv[0])]


def brute_space(bias, head_pred):
    """Every hypothesis in the space, canonical, as a list of Programs."""
    pool = brute_clauses(bias, head_pred)
    out = []
    for k in range(1, bias.max_clauses + 1):
        for chosen in combinations(pool, k):
            out.append(Program(tuple(sorted(chosen, key=clause_key))))
    return out


def brute_coverage(task, bk, limits=None):
    """(program, outcome) for every hypothesis in the task's bias space."""
    from hornlearn.engine import DEFAULT_LIMITS

    limits = limits or DEFAULT_LIMITS
    db = bk if isinstance(bk, RuleDb) else RuleDb(bk)
    table = []
    for h in brute_space(task.bias, task.head):
        table.append((h, test_hypothesis(h, db, task.exs, limits)))
    return table


def brute_solutions(task, bk, limits=None):
    """All exact solutions and the minimal solution size (None if none)."""
    table = brute_coverage(task, bk, limits)
    solutions = [h for h, o in table if o.is_solution(task.exs)]
    min_size = min((h.size for h in solutions), default=None)
    return solutions, min_size, table
