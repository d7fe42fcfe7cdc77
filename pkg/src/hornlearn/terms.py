"""First-order syntax: terms, atoms, definite clauses, programs.

Variables are clause-scoped; two clauses are alpha-equivalent when one can be
renamed into the other, and programs are kept as canonically-sorted tuples of
canonical clauses so alpha-equivalence reduces to structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

# Terms sit in dict-heavy hot loops (unification trails, memoized
# subsumption, enumeration dedup), so every node precomputes its hash;
# lookups then mostly resolve by identity because clause and program objects
# are shared rather than rebuilt.


@dataclass(frozen=True, slots=True)
class Var:
    name: str
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("V", self.name)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Const:
    symbol: str
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("c", self.symbol)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.symbol


@dataclass(frozen=True, slots=True)
class Struct:
    functor: str
    args: tuple
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.functor, self.args)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.functor}({', '.join(map(repr, self.args))})"


# A Term is a Var, a Const, or a Struct with arity >= 1.
Term = Var | Const | Struct


@dataclass(frozen=True, slots=True)
class Atom:
    pred: str
    args: tuple = ()
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.pred, self.args)))

    def __hash__(self):
        return self._hash

    @property
    def arity(self):
        return len(self.args)

    def __repr__(self):
        if not self.args:
            return self.pred
        return f"{self.pred}({', '.join(map(repr, self.args))})"


@dataclass(frozen=True, slots=True)
class Clause:
    head: Atom
    body: tuple = ()
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.head, self.body)))

    def __hash__(self):
        return self._hash

    @property
    def size(self):
        """Total literal count, head included."""
        return 1 + len(self.body)

    def __repr__(self):
        if not self.body:
            return f"{self.head!r}."
        return f"{self.head!r} :- {', '.join(map(repr, self.body))}."


@dataclass(frozen=True, slots=True)
class Program:
    """A set of definite clauses, stored canonically (see make_program)."""

    clauses: tuple = ()
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.clauses))

    def __hash__(self):
        return self._hash

    @property
    def size(self):
        return sum(c.size for c in self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self):
        return len(self.clauses)

    def __repr__(self):
        return " ".join(map(repr, self.clauses))


def struct(functor, *args):
    return Struct(functor, tuple(args))


def atom(pred, *args):
    return Atom(pred, tuple(args))


def term_vars(term, acc=None):
    """Set of variables occurring in a term."""
    if acc is None:
        acc = set()
    if isinstance(term, Var):
        acc.add(term)
    elif isinstance(term, Struct):
        for a in term.args:
            term_vars(a, acc)
    return acc


def atom_vars(a, acc=None):
    if acc is None:
        acc = set()
    for t in a.args:
        term_vars(t, acc)
    return acc


def clause_vars(c):
    acc = atom_vars(c.head)
    for b in c.body:
        atom_vars(b, acc)
    return acc


def is_ground_term(term):
    if isinstance(term, Var):
        return False
    if isinstance(term, Struct):
        return all(is_ground_term(a) for a in term.args)
    return True


def is_ground_atom(a):
    return all(is_ground_term(t) for t in a.args)


# ---------------------------------------------------------------------------
# Substitution and unification


def occurs(var, term, bindings):
    """Occurs check under a triangular binding map."""
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            if t == var:
                return True
            bound = bindings.get(t)
            if bound is not None:
                stack.append(bound)
        elif isinstance(t, Struct):
            stack.extend(t.args)
    return False


def walk(term, bindings):
    """Resolve a variable chain to its binding (or itself)."""
    while isinstance(term, Var):
        nxt = bindings.get(term)
        if nxt is None:
            return term
        term = nxt
    return term


def resolve(term, bindings):
    """Deep-apply a triangular binding map to a term."""
    term = walk(term, bindings)
    if isinstance(term, Struct):
        return Struct(term.functor, tuple(resolve(a, bindings) for a in term.args))
    return term


def unify_terms(t1, t2, bindings, trail):
    """Destructively extend `bindings` to unify t1 and t2; record new bindings
    on `trail` so callers can undo on backtrack. Occurs check enforced."""
    t1 = walk(t1, bindings)
    t2 = walk(t2, bindings)
    if t1 is t2 or t1 == t2:
        return True
    if isinstance(t1, Var):
        if occurs(t1, t2, bindings):
            return False
        bindings[t1] = t2
        trail.append(t1)
        return True
    if isinstance(t2, Var):
        if occurs(t2, t1, bindings):
            return False
        bindings[t2] = t1
        trail.append(t2)
        return True
    if isinstance(t1, Const) or isinstance(t2, Const):
        return False  # unequal constants, or constant vs struct
    if t1.functor != t2.functor or len(t1.args) != len(t2.args):
        return False
    for a, b in zip(t1.args, t2.args):
        if not unify_terms(a, b, bindings, trail):
            return False
    return True


def undo_trail(trail, mark, bindings):
    while len(trail) > mark:
        del bindings[trail.pop()]


def unify(a, b):
    """Most general unifier of two atoms, or None.

    The returned map is idempotent: every right-hand side is fully resolved.
    """
    if a.pred != b.pred or len(a.args) != len(b.args):
        return None
    bindings, trail = {}, []
    for t1, t2 in zip(a.args, b.args):
        if not unify_terms(t1, t2, bindings, trail):
            return None
    return {v: resolve(t, bindings) for v, t in bindings.items()}


def apply_subst_term(term, subst):
    if isinstance(term, Var):
        return subst.get(term, term)
    if isinstance(term, Struct):
        return Struct(term.functor, tuple(apply_subst_term(a, subst) for a in term.args))
    return term


def apply_subst_atom(a, subst):
    return Atom(a.pred, tuple(apply_subst_term(t, subst) for t in a.args))


# ---------------------------------------------------------------------------
# Canonical forms (alpha-equivalence)

_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def canonical_var_name(i):
    return _LETTERS[i] if i < 26 else f"V{i}"


def _rename_key_term(term, mapping):
    """Structural key of a term, allocating canonical indices to variables by
    first occurrence."""
    if isinstance(term, Var):
        idx = mapping.get(term)
        if idx is None:
            idx = len(mapping)
            mapping[term] = idx
        return ("v", idx)
    if isinstance(term, Const):
        return ("c", term.symbol)
    return ("s", term.functor, tuple(_rename_key_term(a, mapping) for a in term.args))


def _clause_key_for_order(head, body_order):
    mapping = {}
    key_head = (head.pred, tuple(_rename_key_term(t, mapping) for t in head.args))
    key_body = tuple(
        (b.pred, tuple(_rename_key_term(t, mapping) for t in b.args)) for b in body_order
    )
    return (key_head, key_body)


def _group_orders(body):
    """Orderings that can realize the minimal key: literals sorted by
    (pred, arity), permuting only within equal-(pred, arity) runs; any
    cross-run swap is dominated because keys compare on the predicate
    first."""
    groups = {}
    for b in body:
        groups.setdefault((b.pred, len(b.args)), []).append(b)
    from itertools import product

    parts = [groups[k] for k in sorted(groups)]
    for perm_parts in product(*(permutations(p) for p in parts)):
        yield tuple(x for part in perm_parts for x in part)


@lru_cache(maxsize=1 << 18)
def clause_key(c):
    """Alpha-invariant key: minimum rename key over body literal orderings.

    Exact while no (pred, arity) run exceeds 7 literals; beyond that a single
    greedy order is used (only hand-written certificate clauses are that
    long; enumeration never emits them).
    """
    if not c.body:
        return _clause_key_for_order(c.head, ())
    runs = {}
    for b in c.body:
        runs[(b.pred, len(b.args))] = runs.get((b.pred, len(b.args)), 0) + 1
    if max(runs.values()) <= 7:
        return min(_clause_key_for_order(c.head, order) for order in _group_orders(c.body))
    body = sorted(c.body, key=lambda b: (b.pred, len(b.args)))
    return _clause_key_for_order(c.head, tuple(body))


def clause_from_key(key):
    key_head, key_body = key

    def term_of(k):
        tag = k[0]
        if tag == "v":
            return Var(canonical_var_name(k[1]))
        if tag == "c":
            return Const(k[1])
        return Struct(k[1], tuple(term_of(a) for a in k[2]))

    head = Atom(key_head[0], tuple(term_of(t) for t in key_head[1]))
    body = tuple(Atom(p, tuple(term_of(t) for t in ts)) for p, ts in key_body)
    return Clause(head, body)


def canonical_clause(c):
    """Rename variables A, B, C, ... by first occurrence under the canonical
    body order."""
    return clause_from_key(clause_key(c))


def make_program(clauses):
    """Canonical program: canonical clauses, deduplicated, sorted."""
    keyed = {}
    for c in clauses:
        keyed.setdefault(clause_key(c), c)
    ordered = sorted(keyed)
    return Program(tuple(clause_from_key(k) for k in ordered))


def program_key(p):
    return tuple(clause_key(c) for c in p.clauses)


def canonicalize(p):
    """Idempotent alpha-normal form of a program (or clause iterable)."""
    if isinstance(p, Program):
        return make_program(p.clauses)
    return make_program(p)
