"""Synthetic kinship problems over a fixed family chain.

The two-generation instance is the classic grandparent setup (a father
chain plus a wife), the three-generation one adds a mother above the wife,
and deeper instances extend the mother chain. Negatives are the full
complement over the person universe, so an exact solution must derive the
positive pairs and nothing else.
"""

from __future__ import annotations

from ..engine import ExampleSet
from ..learn import Task
from ..parse import parse_clauses
from ..schedule import MultiTaskProblem
from ..space import LanguageBias
from ..terms import Atom, Const

from .taskdir import write_problem

# The figure facts plus a one-generation decoy branch. The decoys add other
# wives, mothers and fathered persons so that only the intended relational
# chains are exact over the person universe; without them, "the unique
# person with a mother" style shortcuts solve the tasks by accident.
_BASE_FACTS = """
isFather("John","Dan").
isFather("Paul","John").
isWife("Alice","Paul").
isFather("Bob","Tom").
isWife("Sue","Bob").
"""

_THIRD_GENERATION = """
isMother("Olga","Alice").
isMother("Ann","Tom").
"""

_EXTRA_MOTHERS = ["Mary", "Eve", "Ruth", "Nora", "Ida", "June", "Kate", "Lena"]


def _facts_and_persons(generations):
    if generations < 2:
        raise ValueError("kinship needs at least two generations")
    text = _BASE_FACTS
    persons = ["John", "Dan", "Paul", "Alice", "Bob", "Tom", "Sue"]
    if generations >= 3:
        text += _THIRD_GENERATION
        persons += ["Olga", "Ann"]
    top = "Olga"
    for i in range(generations - 3):
        name = _EXTRA_MOTHERS[i % len(_EXTRA_MOTHERS)] + ("" if i < len(_EXTRA_MOTHERS) else str(i))
        text += f'isMother("{name}","{top}").\n'
        persons.append(name)
        top = name
    return tuple(parse_clauses(text)), persons


def _complement_examples(pred, persons, positives):
    pos = [Atom(pred, (Const(a), Const(b))) for a, b in positives]
    pos_set = set(positives)
    neg = [
        Atom(pred, (Const(a), Const(b)))
        for a in persons
        for b in persons
        if (a, b) not in pos_set
    ]
    return ExampleSet(tuple(pos), tuple(neg))


def build_kinship(generations):
    """In-memory kinship problem; deterministic in `generations`."""
    bk, persons = _facts_and_persons(generations)
    body = [("isFather", 2), ("isWife", 2)]
    if generations >= 3:
        body.append(("isMother", 2))

    def bias(head):
        return LanguageBias(
            max_arity=2,
            max_vars=4,
            max_body=3,
            max_clauses=1,
            head_preds=((head, 2),),
            body_preds=tuple(body),
        )

    tasks = [
        Task("isGrandfather", 2, _complement_examples("isGrandfather", persons, [("Paul", "Dan")]),
             bias("isGrandfather")),
        Task("isGrandmother", 2, _complement_examples("isGrandmother", persons, [("Alice", "Dan")]),
             bias("isGrandmother")),
    ]
    if generations >= 3:
        tasks.append(
            Task("isGrandgrandmother", 2,
                 _complement_examples("isGrandgrandmother", persons, [("Olga", "Dan")]),
                 bias("isGrandgrandmother"))
        )
    return MultiTaskProblem(tasks=tuple(tasks), bk=bk)


def gen_kinship(generations, out_dir):
    """Write the kinship task directory; byte-identical across runs."""
    return write_problem(build_kinship(generations), out_dir)
