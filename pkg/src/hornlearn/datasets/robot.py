"""Robot movement chain: learn to travel d cells up from unit moves.

Coordinates are successor terms inside a state pair, so the grid is
unbounded and the whole background knowledge is a single clause. Each task
`move_up<d>` has one positive example (exactly d cells up from the origin)
and two near-miss negatives (d-1 and d+1 cells). With ascending distances
where each is the double of the previous, every task after the first has a
two-literal body once its predecessor has been solved and exposed.
"""

from __future__ import annotations

from ..engine import ExampleSet
from ..learn import Task
from ..parse import parse_clauses
from ..schedule import MultiTaskProblem
from ..space import LanguageBias
from ..terms import Atom, Const, Struct

from .taskdir import write_problem

_BK = "move_up(state(X,Y), state(X,s(Y))).\n"


def _height(n):
    t = Const("z")
    for _ in range(n):
        t = Struct("s", (t,))
    return t


def _state(y):
    return Struct("state", (Const("z"), _height(y)))


def _example(name, d):
    return Atom(name, (_state(0), _state(d)))


def build_robot(distances, max_body=None):
    """One task per distance, ascending. `max_body` caps every task's body
    length (and variable budget accordingly)."""
    if list(distances) != sorted(distances) or len(set(distances)) != len(distances):
        raise ValueError("distances must be strictly ascending")
    if any(d < 1 for d in distances):
        raise ValueError("distances must be positive")
    bk = tuple(parse_clauses(_BK))
    tasks = []
    for d in distances:
        m = d if max_body is None else min(d, max_body)
        name = f"move_up{d}"
        neg = [_example(name, d - 1), _example(name, d + 1)]
        tasks.append(
            Task(
                name,
                2,
                ExampleSet((_example(name, d),), tuple(neg)),
                LanguageBias(
                    max_arity=2,
                    max_vars=m + 1,
                    max_body=m,
                    max_clauses=1,
                    head_preds=((name, 2),),
                    body_preds=(("move_up", 2),),
                ),
            )
        )
    return MultiTaskProblem(tasks=tuple(tasks), bk=bk)


def gen_robot(distances, out_dir, max_body=None):
    return write_problem(build_robot(distances, max_body=max_body), out_dir)
