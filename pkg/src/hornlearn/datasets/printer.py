"""Printer head over a small pixel grid.

State terms are `state(X, Y, W, H, Bitmap)` with 1-based coordinates, origin
at the bottom-left, and the bitmap a 0/1 list in row-major order from the top
row down (so index 0 is the top-left pixel). The head can move one cell up or
right, fill the pixel under it, or teleport back to (1,1). Grid geometry is
compiled into small fact tables; the bitmap update is a recursive list
substitution, so everything stays inside definite clauses.

Tasks are the four border lines plus any requested composite patterns (zebra,
cross, cube). Line tasks are learnable from raw moves at small grids;
composites chain line predicates with `return_start` and are the transfer
payoff. Every task records its intended solution so solvability can be
checked by direct evaluation, and the full grid sizes stay far too large for
the composites to be found without the lines in the background knowledge.
"""

from __future__ import annotations

from ..engine import DEFAULT_LIMITS, ExampleSet, RuleDb, test_hypothesis
from ..learn import Task
from ..parse import parse_clause, parse_clauses
from ..schedule import MultiTaskProblem
from ..space import LanguageBias
from ..terms import Atom, Const, Program, Struct

from .taskdir import write_problem

PATTERNS = ("zebra", "cross", "cube")


def _bk_text(width, height):
    lines = [
        "at_start(state(1,1,W,H,G)).",
        "return_start(state(X,Y,W,H,G), state(1,1,W,H,G)).",
        "move_up(state(X,Y,W,H,G), state(X,Y2,W,H,G)) :- step_y(Y,Y2).",
        "move_right(state(X,Y,W,H,G), state(X2,Y,W,H,G)) :- step_x(X,X2).",
        "draw1(state(X,Y,W,H,G), state(X,Y,W,H,G2)) :- pix(X,Y,I), set_at(I,G,G2).",
        "set_at(0, [C|T], [1|T]).",
        "set_at(N, [C|T], [C|T2]) :- dec(N,N2), set_at(N2,T,T2).",
    ]
    lines += [f"step_x({x},{x + 1})." for x in range(1, width)]
    lines += [f"step_y({y},{y + 1})." for y in range(1, height)]
    for x in range(1, width + 1):
        for y in range(1, height + 1):
            lines.append(f"pix({x},{y},{(height - y) * width + (x - 1)}).")
    lines += [f"dec({n},{n - 1})." for n in range(1, width * height)]
    return "\n".join(lines) + "\n"


def _bits_term(bits):
    t = Const("[]")
    for b in reversed(bits):
        t = Struct(".", (Const(str(b)), t))
    return t


def _state(x, y, width, height, bits):
    return Struct(
        "state",
        (Const(str(x)), Const(str(y)), Const(str(width)), Const(str(height)), _bits_term(bits)),
    )


def _index(x, y, width, height):
    return (height - y) * width + (x - 1)


class _Canvas:
    """Replays a move/draw script to produce the ground end state."""

    def __init__(self, width, height):
        self.width, self.height = width, height
        self.x, self.y = 1, 1
        self.bits = [0] * (width * height)
        self.script = []

    def up(self):
        self.y += 1
        self.script.append("move_up")
        return self

    def right(self):
        self.x += 1
        self.script.append("move_right")
        return self

    def draw(self):
        self.bits[_index(self.x, self.y, self.width, self.height)] = 1
        self.script.append("draw1")
        return self

    def ret(self):
        self.x, self.y = 1, 1
        self.script.append("return_start")
        return self


def _line_scripts(width, height):
    bottom = _Canvas(width, height).draw()
    for _ in range(width - 1):
        bottom.right().draw()
    left = _Canvas(width, height).draw()
    for _ in range(height - 1):
        left.up().draw()
    top = _Canvas(width, height)
    for _ in range(height - 1):
        top.up()
    top.draw()
    for _ in range(width - 1):
        top.right().draw()
    right = _Canvas(width, height)
    for _ in range(width - 1):
        right.right()
    right.draw()
    for _ in range(height - 1):
        right.up().draw()
    return {"bottomLine": bottom, "leftLine": left, "topLine": top, "rightLine": right}


def _chain_solution(name, steps):
    """name(A,B) :- steps threaded through fresh intermediate variables.

    The body keeps its chain order (no alpha-canonicalization): evaluating a
    reordered chain would run literals with unbound arguments and drown in
    the bitmap-substitution search.
    """
    args = ["A"] + [f"S{i}" for i in range(1, len(steps))] + ["B"]
    body = ", ".join(f"{p}({a},{b})" for p, a, b in zip(steps, args, args[1:]))
    return Program((parse_clause(f"{name}(A,B) :- {body}."),))


def _near_miss_bits(bits):
    """Two wrong bitmaps: first set pixel cleared, first clear pixel set."""
    out = []
    flip_off = list(bits)
    for i, b in enumerate(flip_off):
        if b:
            flip_off[i] = 0
            out.append(flip_off)
            break
    flip_on = list(bits)
    for i, b in enumerate(flip_on):
        if not b:
            flip_on[i] = 1
            out.append(flip_on)
            break
    return out


def _task_for(name, canvas, bias, solution):
    width, height = canvas.width, canvas.height
    blank = [0] * (width * height)
    start = _state(1, 1, width, height, blank)
    end = _state(canvas.x, canvas.y, width, height, canvas.bits)
    pos = (Atom(name, (start, end)),)
    neg = [
        Atom(name, (start, _state(canvas.x, canvas.y, width, height, bad)))
        for bad in _near_miss_bits(canvas.bits)
    ]
    # wrong starting corner with the correct output: rules out programs that
    # never thread the input state
    neg.append(Atom(name, (_state(width, height, width, height, blank), end)))
    # correct bitmap at the wrong head position
    wrong_pos = (1, 1) if (canvas.x, canvas.y) != (1, 1) else (width, height)
    neg.append(Atom(name, (start, _state(*wrong_pos, width, height, canvas.bits))))
    return Task(name, 2, ExampleSet(pos, tuple(neg)), bias), solution


def build_printer(patterns, width, height):
    """Line tasks plus the requested composite patterns on a width x height
    grid. Raises for patterns the grid cannot carry."""
    for p in patterns:
        if p not in PATTERNS:
            raise ValueError(f"unknown pattern {p!r}; expected one of {PATTERNS}")
    if width < 2 or height < 2:
        raise ValueError("grid must be at least 2x2")
    if "cross" in patterns and (width < 3 or height < 3 or width % 2 == 0 or height % 2 == 0):
        raise ValueError("cross needs odd width and height of at least 3")
    bk = tuple(parse_clauses(_bk_text(width, height)))
    base_preds = (
        ("at_start", 1),
        ("move_up", 2),
        ("move_right", 2),
        ("draw1", 2),
        ("return_start", 2),
    )
    line_preds = tuple((n, 2) for n in ("bottomLine", "leftLine", "topLine", "rightLine"))

    def line_bias(name, body_len):
        return LanguageBias(
            max_arity=2,
            max_vars=body_len + 1,
            max_body=body_len,
            max_clauses=1,
            head_preds=((name, 2),),
            body_preds=base_preds,
        )

    def composite_bias(name, body_len):
        return LanguageBias(
            max_arity=2,
            max_vars=body_len + 1,
            max_body=body_len,
            max_clauses=1,
            head_preds=((name, 2),),
            body_preds=(("return_start", 2),) + line_preds,
        )

    tasks, solutions = [], {}
    for name, canvas in _line_scripts(width, height).items():
        task, sol = _task_for(
            name, canvas, line_bias(name, len(canvas.script)),
            _chain_solution(name, canvas.script),
        )
        tasks.append(task)
        solutions[name] = sol

    composites = {}
    if "zebra" in patterns:
        # alternate rows from the top down; expressible through line tasks
        # only while the striped rows are exactly the border rows
        rows = sorted(y for y in range(1, height + 1) if (height - y) % 2 == 0)
        canvas = _Canvas(width, height)
        steps = []
        for y in rows:
            if steps:
                canvas.ret()
                steps.append("return_start")
            while canvas.y < y:
                canvas.up()
            canvas.draw()
            for _ in range(width - 1):
                canvas.right().draw()
            steps.append({height: "topLine", 1: "bottomLine"}.get(y))
        if any(s is None for s in steps):
            steps = list(canvas.script)  # middle stripes: raw-move solution
        composites["zebra"] = (canvas, steps)
    if "cube" in patterns:
        canvas = _Canvas(width, height)
        canvas.draw()
        for _ in range(width - 1):
            canvas.right().draw()
        canvas.ret()
        for _ in range(height - 1):
            canvas.up()
        canvas.draw()
        for _ in range(width - 1):
            canvas.right().draw()
        canvas.ret()
        canvas.draw()
        for _ in range(height - 1):
            canvas.up().draw()
        canvas.ret()
        for _ in range(width - 1):
            canvas.right()
        canvas.draw()
        for _ in range(height - 1):
            canvas.up().draw()
        steps = [
            "bottomLine", "return_start", "topLine", "return_start",
            "leftLine", "return_start", "rightLine",
        ]
        composites["cube"] = (canvas, steps)
    if "cross" in patterns:
        canvas = _Canvas(width, height)
        x_mid, y_mid = (width + 1) // 2, (height + 1) // 2
        for _ in range(x_mid - 1):
            canvas.right()
        canvas.draw()
        for _ in range(height - 1):
            canvas.up().draw()
        canvas.ret()
        for _ in range(y_mid - 1):
            canvas.up()
        canvas.draw()
        for _ in range(width - 1):
            canvas.right().draw()
        composites["cross"] = (canvas, list(canvas.script))

    for name, (canvas, steps) in sorted(composites.items()):
        uses_lines = any(s.endswith("Line") for s in steps)
        solution = _chain_solution(name, steps)
        bias = composite_bias(name, len(steps)) if uses_lines else line_bias(name, len(steps))
        task, sol = _task_for(name, canvas, bias, solution)
        tasks.append(task)
        solutions[name] = sol

    problem = MultiTaskProblem(tasks=tuple(tasks), bk=bk)
    return problem, solutions


def self_check(problem, solutions, limits=DEFAULT_LIMITS):
    """Certificate check: each task's intended solution covers its examples
    exactly, with earlier tasks' solutions available as background knowledge.
    Returns the list of failures (empty when everything is solvable)."""
    bk = list(problem.bk)
    failures = []
    for task in problem.tasks:
        sol = solutions[task.name]
        outcome = test_hypothesis(sol, RuleDb(bk), task.exs, limits)
        if not outcome.is_solution(task.exs):
            failures.append(task.name)
        bk.extend(sol.clauses)
    return failures


def gen_printer(patterns, width, height, out_dir):
    problem, _ = build_printer(patterns, width, height)
    return write_problem(problem, out_dir)
