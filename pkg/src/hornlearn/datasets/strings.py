"""String transformation tasks over character lists.

Strings are lists of single-character constants so the primitives can take
them apart structurally:

    mk_uppercase(A,B)  B is A with its first character uppercased
    skip1(A,B)         B is A without its first character
    copyskip1(A,B)     A and B begin with the same character
    not_letter(A)      A starts with a non-letter character
    is_empty(A)        A is the empty list
    is_space(A)        A starts with a space
    is_number(A)       A starts with a digit

The bundled sample carries three tasks: f1 capitalizes a word, f2 drops a
two-letter title plus the space and capitalizes what follows, f3 copies its
input up to the first non-letter character (the one recursive task).
"""

from __future__ import annotations

import string as _string

from ..engine import ExampleSet
from ..learn import Task
from ..parse import parse_clauses
from ..schedule import MultiTaskProblem
from ..space import LanguageBias
from ..terms import Atom, Const, Program, Struct

from .taskdir import load_problem, write_problem

_NON_LETTERS = [".", " ", ","] + list(_string.digits)


def _bk_text():
    lines = [f"up({c},'{c.upper()}')." for c in _string.ascii_lowercase]
    lines += [f"non_letter('{c}')." for c in _NON_LETTERS]
    lines += [
        "mk_uppercase([C|T],[U|T]) :- up(C,U).",
        "skip1([C|T],T).",
        "copyskip1([C|T],[C|T2]).",
        "not_letter([C|T]) :- non_letter(C).",
        "is_empty([]).",
        "is_space([' '|T]).",
    ]
    lines += [f"is_number(['{d}'|T])." for d in _string.digits]
    return "\n".join(lines) + "\n"


def chars(s):
    """Character-list term for a Python string."""
    t = Const("[]")
    for c in reversed(s):
        t = Struct(".", (Const(c), t))
    return t


def _ex(pred, a, b):
    return Atom(pred, (chars(a), chars(b)))


def _bias(name, body, v, m, n=1, recursion=False):
    return LanguageBias(
        max_arity=2,
        max_vars=v,
        max_body=m,
        max_clauses=n,
        head_preds=((name, 2),),
        body_preds=tuple(body),
        enable_recursion=recursion,
    )


def build_strings():
    bk = tuple(parse_clauses(_bk_text()))
    f1 = Task(
        "f1", 2,
        ExampleSet(
            (_ex("f1", "james", "James"), _ex("f1", "jozie", "Jozie"), _ex("f1", "paul", "Paul")),
            (_ex("f1", "james", "james"), _ex("f1", "jozie", "ozie"), _ex("f1", "paul", "P")),
        ),
        _bias("f1", [("mk_uppercase", 2), ("skip1", 2)], v=3, m=2),
    )
    f2 = Task(
        "f2", 2,
        ExampleSet(
            (
                _ex("f2", "dr wilson", "Wilson"),
                _ex("f2", "dr brown", "Brown"),
                _ex("f2", "dr wright", "Wright"),
            ),
            (
                _ex("f2", "dr wilson", "wilson"),
                _ex("f2", "dr brown", "r Brown"),
                _ex("f2", "dr wright", "Dr wright"),
            ),
        ),
        _bias("f2", [("mk_uppercase", 2), ("skip1", 2)], v=5, m=4),
    )
    f3 = Task(
        "f3", 2,
        ExampleSet(
            (
                _ex("f3", "artificial.", "artificial"),
                _ex("f3", "intelligence ", "intelligence"),
                _ex("f3", "systems1a", "systems"),
            ),
            (
                _ex("f3", "artificial.", "artificial."),
                _ex("f3", "intelligence ", "intelligence "),
                _ex("f3", "systems1a", "systems1"),
            ),
        ),
        _bias(
            "f3",
            [("copyskip1", 2), ("skip1", 2), ("is_empty", 1), ("not_letter", 1)],
            v=4, m=4, n=2, recursion=True,
        ),
    )
    return MultiTaskProblem(tasks=(f1, f2, f3), bk=bk)


def intended_solutions():
    """Reference programs for the bundled tasks, for certificate checks.

    Clause bodies keep their written order so chained and recursive literals
    evaluate with bound arguments."""
    from ..parse import parse_clause

    return {
        "f1": Program((parse_clause("f1(A,B) :- mk_uppercase(A,B)."),)),
        "f2": Program(
            (parse_clause("f2(A,B) :- skip1(A,C), skip1(C,D), skip1(D,E), mk_uppercase(E,B)."),)
        ),
        "f3": Program(
            (
                parse_clause("f3(A,B) :- copyskip1(A,B), skip1(A,C), skip1(B,D), f3(C,D)."),
                parse_clause("f3(A,B) :- is_empty(B), not_letter(A)."),
            )
        ),
    }


def gen_strings(out_dir):
    """Materialize the bundled sample as a task directory."""
    return write_problem(build_strings(), out_dir)


def load_strings(directory):
    """Load a string-transformation task directory (the bundled layout)."""
    return load_problem(directory)
