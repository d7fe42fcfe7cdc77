"""On-disk task directory layout.

    <root>/bk.pl           background clauses
    <root>/manifest.txt    task names, one per line, in intended order
    <root>/<task>/bias.pl  language bias declarations
    <root>/<task>/exs.pl   pos(atom). / neg(atom). lines

Writing is deterministic: identical inputs produce byte-identical trees.
"""

from __future__ import annotations

from pathlib import Path

from ..engine import ExampleSet
from ..learn import Task
from ..parse import ParseError, format_atom, format_clause, parse_clauses
from ..schedule import MultiTaskProblem
from ..space import format_bias, parse_bias
from ..terms import Atom, Const, Struct


def write_problem(problem, root):
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    bk_text = "\n".join(format_clause(c) for c in problem.bk) + "\n"
    (root / "bk.pl").write_text(bk_text)
    (root / "manifest.txt").write_text("".join(t.name + "\n" for t in problem.tasks))
    for task in problem.tasks:
        tdir = root / task.name
        tdir.mkdir(exist_ok=True)
        (tdir / "bias.pl").write_text(format_bias(task.bias))
        lines = [f"pos({format_atom(a)})." for a in task.exs.pos]
        lines += [f"neg({format_atom(a)})." for a in task.exs.neg]
        (tdir / "exs.pl").write_text("\n".join(lines) + "\n")
    return root


def _parse_examples(text, path):
    pos, neg = [], []
    for clause in parse_clauses(text):
        if clause.body or clause.head.pred not in ("pos", "neg") or len(clause.head.args) != 1:
            raise ParseError(f"{path}: expected pos(atom). or neg(atom). lines", 1, 1)
        wrapped = clause.head.args[0]
        if isinstance(wrapped, Struct):
            inner = Atom(wrapped.functor, wrapped.args)
        elif isinstance(wrapped, Const):
            inner = Atom(wrapped.symbol)
        else:
            raise ParseError(f"{path}: example must be a ground atom", 1, 1)
        (pos if clause.head.pred == "pos" else neg).append(inner)
    return tuple(pos), tuple(neg)


def load_problem(root):
    """Load a task directory; parse errors carry file and line/column."""
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset directory not found: {root}")
    bk_path = root / "bk.pl"
    bk = tuple(parse_clauses(bk_path.read_text())) if bk_path.exists() else ()
    manifest = root / "manifest.txt"
    if manifest.exists():
        names = [line.strip() for line in manifest.read_text().splitlines() if line.strip()]
    else:
        names = sorted(p.name for p in root.iterdir() if p.is_dir())
    tasks = []
    for name in names:
        tdir = root / name
        bias = parse_bias((tdir / "bias.pl").read_text())
        pos, neg = _parse_examples((tdir / "exs.pl").read_text(), tdir / "exs.pl")
        arity = pos[0].arity if pos else bias.head_preds[0][1]
        tasks.append(Task(name=name, arity=arity, exs=ExampleSet(pos, neg), bias=bias))
    return MultiTaskProblem(tasks=tuple(tasks), bk=bk)
