"""Hypothesis constraints derived from failed candidates.

Four kinds: a Generalisation constraint rejects anything at least as general
as the failed hypothesis (it covered a negative example); a Specialisation
constraint rejects anything at most as general (it missed a positive); an
Elimination constraint rejects any separable hypothesis containing all of the
failed hypothesis's clauses (it covered no positive at all); a Banish
constraint rejects exactly the failed hypothesis.

Evaluations cut short by resource limits yield only Banish: their missing
coverage may be a resource artifact, and preserved constraints must stay
sound under any background-knowledge extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .parse import format_clause
from .subsume import _body_preds, is_generalisation, is_separable, is_specialisation
from .terms import clause_key, program_key


class Kind(Enum):
    GENERALISATION = "generalisation"
    SPECIALISATION = "specialisation"
    ELIMINATION = "elimination"
    BANISH = "banish"


class StoreEvent(Enum):
    SIZE_CHANGE = "size-change"
    BK_AUGMENTED = "bk-augmented"


@dataclass(frozen=True, slots=True)
class Constraint:
    kind: Kind
    pattern: object  # canonical Program
    origin_size: int


def derive_constraints(h, outcome, exs):
    """Constraints justified by a failed hypothesis's test outcome."""
    size = h.size
    if outcome.exhausted:
        return [Constraint(Kind.BANISH, h, size)]
    out = []
    if outcome.neg_covered:
        out.append(Constraint(Kind.GENERALISATION, h, size))
    if len(outcome.pos_covered) < len(exs.pos):
        out.append(Constraint(Kind.SPECIALISATION, h, size))
    if not outcome.pos_covered:
        out.append(Constraint(Kind.ELIMINATION, h, size))
    out.append(Constraint(Kind.BANISH, h, size))
    return out


def violates(candidate, c):
    """Does the candidate hypothesis fall to this constraint?"""
    if c.kind is Kind.BANISH:
        return program_key(candidate) == program_key(c.pattern)
    if c.kind is Kind.GENERALISATION:
        return is_generalisation(c.pattern, candidate)
    if c.kind is Kind.SPECIALISATION:
        return is_specialisation(c.pattern, candidate)
    pattern_keys = {clause_key(cl) for cl in c.pattern}
    candidate_keys = {clause_key(cl) for cl in candidate}
    return pattern_keys <= candidate_keys and is_separable(candidate)


def _body_pred_sets(h):
    return [_body_preds(c) for c in h]


class ConstraintStore:
    """Per-task collection of constraints with fast candidate screening."""

    def __init__(self):
        self._seen = set()
        self._banish = []
        self._banish_keys = set()
        self._elim = []  # (clause-key frozenset, Constraint)
        # generalisation/specialisation patterns grouped by their per-clause
        # body-predicate signature, so the cheap necessary test runs once per
        # group rather than once per constraint
        self._gen = {}
        self._spec = {}
        self._counts = {k: 0 for k in Kind}

    def add(self, c):
        """Insert unless an identical (kind, pattern) is already stored."""
        key = (c.kind, program_key(c.pattern))
        if key in self._seen:
            return False
        self._seen.add(key)
        self._counts[c.kind] += 1
        if c.kind is Kind.BANISH:
            self._banish.append(c)
            self._banish_keys.add(key[1])
        elif c.kind is Kind.ELIMINATION:
            self._elim.append((frozenset(key[1]), c))
        else:
            signature = tuple(sorted(_body_pred_sets(c.pattern), key=sorted))
            groups = self._gen if c.kind is Kind.GENERALISATION else self._spec
            groups.setdefault(signature, []).append(c)
        return True

    def add_all(self, constraints):
        return sum(self.add(c) for c in constraints)

    def count(self):
        return sum(self._counts.values())

    def counts_by_kind(self):
        return dict(self._counts)

    def __len__(self):
        return self.count()

    def __iter__(self):
        for _, c in self._elim:
            yield c
        for group in self._gen.values():
            yield from group
        for group in self._spec.values():
            yield from group
        yield from self._banish

    def prune(self, candidate):
        """True iff any stored constraint rejects the candidate. Candidates
        must be canonical (clauses alpha-normal, key-sorted)."""
        ckeys = tuple(clause_key(cl) for cl in candidate)
        if ckeys in self._banish_keys:
            return True
        if self._elim:
            ckey_set = frozenset(ckeys)
            separable = None
            for pattern_keys, _ in self._elim:
                if pattern_keys <= ckey_set:
                    if separable is None:
                        separable = is_separable(candidate)
                    if separable:
                        return True
        cand_pred_sets = _body_pred_sets(candidate)
        for pattern_sets, group in self._gen.items():
            # a subsuming candidate clause uses no body predicate outside the
            # pattern clause it maps into; cheap necessary check per group
            if all(any(cs <= ps for cs in cand_pred_sets) for ps in pattern_sets):
                for c in group:
                    if is_generalisation(c.pattern, candidate):
                        return True
        for pattern_sets, group in self._spec.items():
            if all(any(ps <= cs for ps in pattern_sets) for cs in cand_pred_sets):
                for c in group:
                    if is_specialisation(c.pattern, candidate):
                        return True
        return False

    def dump_lines(self):
        """One constraint per line: `kind<TAB>canonical pattern text`."""
        lines = []
        for c in self:
            text = " ".join(format_clause(cl) for cl in c.pattern)
            lines.append(f"{c.kind.value}\t{text}")
        return sorted(lines)


def preserve_across_update(store, event, preserve=True):
    """Identity when preservation is on (every stored constraint stays sound
    across size changes and fresh-predicate BK growth); a fresh store when it
    is off."""
    if not isinstance(event, StoreEvent):
        raise ValueError(f"unknown store event: {event!r}")
    return store if preserve else ConstraintStore()
