"""Language bias and size-stratified hypothesis enumeration.

A hypothesis is a set of definite clauses, all with the task's target
predicate in the head and distinct variables as head arguments. A clause body
is a set of distinct literals over the declared body predicates; size counts
every literal, heads included. Enumeration at a given total size is
deterministic, emits one representative per alpha-equivalence class, and can
reject candidates during generation via a callback.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .terms import Atom, Clause, Program, Var, canonical_var_name, clause_from_key, clause_key


@dataclass(frozen=True, slots=True)
class LanguageBias:
    max_arity: int
    max_vars: int
    max_body: int
    max_clauses: int
    head_preds: tuple  # ((name, arity), ...)
    body_preds: tuple
    enable_recursion: bool = False

    def __post_init__(self):
        if min(self.max_arity, self.max_vars, self.max_body, self.max_clauses) < 1:
            raise ValueError("all bias bounds must be >= 1")
        if not self.head_preds or not self.body_preds:
            raise ValueError("head and body predicate declarations must be nonempty")
        for name, arity in self.head_preds + self.body_preds:
            if arity > self.max_arity:
                raise ValueError(f"{name}/{arity} exceeds max arity {self.max_arity}")

    @property
    def max_size(self):
        """Largest possible hypothesis size under this bias."""
        return self.max_clauses * (1 + self.max_body)

    def with_body_preds(self, extra):
        """Bias extended with additional body predicates (knowledge transfer)."""
        new = [p for p in extra if p not in self.body_preds]
        if not new:
            return self
        arity = max(self.max_arity, max(a for _, a in new))
        return LanguageBias(
            max_arity=arity,
            max_vars=self.max_vars,
            max_body=self.max_body,
            max_clauses=self.max_clauses,
            head_preds=self.head_preds,
            body_preds=self.body_preds + tuple(new),
            enable_recursion=self.enable_recursion,
        )


def hs_upper_bound(bias):
    """Upper bound on the number of hypotheses the bias admits.

    Counts clauses as a head choice times a set of up to max_body distinct
    body literals, each literal being a predicate with any tuple of
    max_vars^arity variable assignments, and hypotheses as sets of up to
    max_clauses clauses. Exact integer arithmetic.
    """
    v_a = bias.max_vars ** bias.max_arity
    body_literals = len(bias.body_preds) * v_a
    bodies = sum(comb(body_literals, i) for i in range(1, bias.max_body + 1))
    clauses = len(bias.head_preds) * v_a * bodies
    return sum(comb(clauses, j) for j in range(1, bias.max_clauses + 1))


def _head_atom(pred, arity):
    return Atom(pred, tuple(Var(canonical_var_name(i)) for i in range(arity)))


@lru_cache(maxsize=4096)
def _clause_pool(bias, head_pred, clause_size):
    """All canonical clauses of the exact size, sorted by alpha key.

    Generation walks predicate multisets in nondecreasing order and assigns
    variable slots as restricted-growth strings seeded with the head
    variables, then dedupes by alpha key; this touches each alpha class a
    small constant number of times instead of the raw v^slots product.
    """
    name, arity = head_pred
    body_len = clause_size - 1
    if body_len < 1 or body_len > bias.max_body:
        return ()
    preds = list(bias.body_preds)
    if bias.enable_recursion and head_pred not in preds:
        preds.append(head_pred)
    preds.sort()
    head = _head_atom(name, arity)
    v = bias.max_vars
    if arity > v:
        return ()
    seen = {}

    def assign(pred_seq, pos, used, literals):
        if pos == len(pred_seq):
            body = tuple(literals)
            if len(set(body)) != len(body):
                return
            key = clause_key(Clause(head, body))
            if key not in seen:
                seen[key] = clause_from_key(key)
            return
        p_name, p_arity = pred_seq[pos]

        def fill(i, used_now, args):
            if i == p_arity:
                lit = Atom(p_name, tuple(Var(canonical_var_name(k)) for k in args))
                assign(pred_seq, pos + 1, used_now, literals + [lit])
                return
            limit = min(used_now + 1, v)
            for k in range(limit):
                fill(i + 1, max(used_now, k + 1), args + (k,))

        fill(0, used, ())

    from itertools import combinations_with_replacement

    for pred_seq in combinations_with_replacement(preds, body_len):
        assign(pred_seq, 0, arity, [])
    return tuple(sorted(seen.items()))


def _size_splits(total, max_part, max_parts):
    """Nondecreasing tuples of clause sizes (each in [2, max_part]) summing
    to total, at most max_parts long."""
    out = []

    def rec(remaining, min_part, parts):
        if remaining == 0:
            out.append(tuple(parts))
            return
        if len(parts) == max_parts:
            return
        for part in range(min_part, min(max_part, remaining) + 1):
            if remaining - part != 0 and remaining - part < part:
                continue  # remaining splits must stay nondecreasing
            rec(remaining - part, part, parts + [part])

    rec(total, 2, [])
    return out


def enumerate_hypotheses(bias, size, head_pred, rejected=None):
    """Stream every hypothesis of exactly `size` total literals, canonical,
    duplicate-free, deterministic. `rejected(h) -> bool` prunes candidates
    before they are yielded."""
    if size < 2 or size > bias.max_size:
        return
    from itertools import combinations, product

    max_clause_size = 1 + bias.max_body
    for split in _size_splits(size, max_clause_size, bias.max_clauses):
        pools = {cs: _clause_pool(bias, head_pred, cs) for cs in set(split)}
        if any(not pools[cs] for cs in split):
            continue
        groups = []
        start = 0
        while start < len(split):
            end = start
            while end < len(split) and split[end] == split[start]:
                end += 1
            groups.append((split[start], end - start))
            start = end
        group_iters = [combinations(pools[cs], count) for cs, count in groups]
        for selection in product(*group_iters):
            keyed = [kc for group in selection for kc in group]
            keyed.sort(key=lambda kc: kc[0])
            # pool clauses are canonical and pairwise distinct, so sorting by
            # key yields the canonical program directly
            h = Program(tuple(c for _, c in keyed))
            if rejected is not None and rejected(h):
                continue
            yield h


def count_hypotheses(bias, head_pred):
    """Total enumerable hypotheses over every feasible size."""
    return sum(
        1
        for size in range(2, bias.max_size + 1)
        for _ in enumerate_hypotheses(bias, size, head_pred)
    )


# ---------------------------------------------------------------------------
# Bias file format: one declaration per line, e.g.
#   head_pred(f,2).  body_pred(mk_uppercase,2).  max_vars(3).
#   max_body(2).  max_clauses(1).  enable_recursion.


def parse_bias(text):
    from .parse import parse_clauses

    head_preds, body_preds = [], []
    settings = {}
    recursion = False
    for clause in parse_clauses(text):
        if clause.body:
            raise ValueError(f"bias declarations must be facts: {clause!r}")
        a = clause.head
        if a.pred == "enable_recursion" and not a.args:
            recursion = True
        elif a.pred in ("head_pred", "body_pred") and len(a.args) == 2:
            name, arity = a.args[0].symbol, int(a.args[1].symbol)
            (head_preds if a.pred == "head_pred" else body_preds).append((name, arity))
        elif a.pred in ("max_vars", "max_body", "max_clauses", "max_arity") and len(a.args) == 1:
            settings[a.pred] = int(a.args[0].symbol)
        else:
            raise ValueError(f"unknown bias declaration: {a!r}")
    declared = head_preds + body_preds
    if not declared:
        raise ValueError("bias declares no predicates")
    max_arity = settings.get("max_arity", max(a for _, a in declared))
    return LanguageBias(
        max_arity=max_arity,
        max_vars=settings.get("max_vars", 3),
        max_body=settings.get("max_body", 2),
        max_clauses=settings.get("max_clauses", 1),
        head_preds=tuple(head_preds),
        body_preds=tuple(body_preds),
        enable_recursion=recursion,
    )


def format_bias(bias):
    lines = [f"head_pred({n},{a})." for n, a in bias.head_preds]
    lines += [f"body_pred({n},{a})." for n, a in bias.body_preds]
    lines.append(f"max_vars({bias.max_vars}).")
    lines.append(f"max_body({bias.max_body}).")
    lines.append(f"max_clauses({bias.max_clauses}).")
    declared = max(a for _, a in bias.head_preds + bias.body_preds)
    if bias.max_arity != declared:
        lines.append(f"max_arity({bias.max_arity}).")
    if bias.enable_recursion:
        lines.append("enable_recursion.")
    return "\n".join(lines) + "\n"
