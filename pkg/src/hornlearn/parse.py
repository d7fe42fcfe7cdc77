"""Reader and writer for the clause text format.

Syntax: `head(args) :- b1(args), b2(args).` and facts `p(c1, c2).`
Comments start with `%`. Constants are lowercase identifiers, quoted strings
(single or double quotes), or integer literals; variables start uppercase
(`_` is an anonymous variable); character lists are written `[j,a,m,e,s]`,
with `[H|T]` cons notation supported.
"""

from __future__ import annotations

import re

from .terms import Atom, Clause, Const, Struct, Var

NIL = Const("[]")
CONS = "."


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<arrow>:-)
  | (?P<punct>[()\[\],|.])
  | (?P<int>-?\d+)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<squote>'(?:[^'\\]|\\.)*')
  | (?P<dquote>"(?:[^"\\]|\\.)*")
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append((kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    return tokens


def _unquote(raw):
    body = raw[1:-1]
    return re.sub(r"\\(.)", r"\1", body)


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, message):
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else (None, "", 1, 1)
            raise ParseError(message + " (unexpected end of input)", last[2], last[3])
        raise ParseError(f"{message}, found {tok[1]!r}", tok[2], tok[3])

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            self.error(f"expected {value or kind}")
        self.i += 1
        return tok

    def at(self, value):
        tok = self.peek()
        return tok is not None and tok[1] == value

    def parse_term(self, fresh):
        tok = self.peek()
        if tok is None:
            self.error("expected a term")
        kind, value = tok[0], tok[1]
        if kind == "var":
            self.i += 1
            if value == "_":
                fresh[0] += 1
                return Var(f"_Anon{fresh[0]}")
            return Var(value)
        if kind == "int":
            self.i += 1
            return Const(value)
        if kind in ("squote", "dquote"):
            self.i += 1
            return Const(_unquote(value))
        if kind == "ident":
            self.i += 1
            if self.at("("):
                self.take(value="(")
                args = [self.parse_term(fresh)]
                while self.at(","):
                    self.take(value=",")
                    args.append(self.parse_term(fresh))
                self.take(value=")")
                return Struct(value, tuple(args))
            return Const(value)
        if value == "[":
            return self.parse_list(fresh)
        self.error("expected a term")

    def parse_list(self, fresh):
        self.take(value="[")
        if self.at("]"):
            self.take(value="]")
            return NIL
        items = [self.parse_term(fresh)]
        while self.at(","):
            self.take(value=",")
            items.append(self.parse_term(fresh))
        if self.at("|"):
            self.take(value="|")
            tail = self.parse_term(fresh)
        else:
            tail = NIL
        self.take(value="]")
        for item in reversed(items):
            tail = Struct(CONS, (item, tail))
        return tail

    def parse_atom(self, fresh):
        tok = self.take("ident")
        name = tok[1]
        if not self.at("("):
            return Atom(name)
        self.take(value="(")
        args = [self.parse_term(fresh)]
        while self.at(","):
            self.take(value=",")
            args.append(self.parse_term(fresh))
        self.take(value=")")
        return Atom(name, tuple(args))

    def parse_clause(self):
        fresh = [0]
        head = self.parse_atom(fresh)
        body = []
        if self.at(":-"):
            self.take(value=":-")
            body.append(self.parse_atom(fresh))
            while self.at(","):
                self.take(value=",")
                body.append(self.parse_atom(fresh))
        self.take(value=".")
        return Clause(head, tuple(body))

    def parse_program(self):
        clauses = []
        while self.peek() is not None:
            clauses.append(self.parse_clause())
        return clauses


def parse_clauses(text):
    """Parse a sequence of clauses; raises ParseError with line/column."""
    return _Parser(text).parse_program()


def parse_clause(text):
    clauses = parse_clauses(text)
    if len(clauses) != 1:
        raise ParseError("expected exactly one clause", 1, 1)
    return clauses[0]


def parse_atom(text):
    parser = _Parser(text)
    a = parser.parse_atom([0])
    if parser.peek() is not None and not parser.at("."):
        parser.error("trailing input after atom")
    return a


def parse_ground_term(text):
    parser = _Parser(text)
    return parser.parse_term([0])


_BARE_IDENT = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_INT = re.compile(r"-?\d+\Z")


def format_term(term):
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Const):
        if term.symbol == "[]":
            return "[]"
        if _BARE_IDENT.match(term.symbol) or _INT.match(term.symbol):
            return term.symbol
        escaped = term.symbol.replace("\\", "\\\\").replace("'", "\\'")
        return f"'{escaped}'"
    if term.functor == CONS and len(term.args) == 2:
        items = []
        node = term
        while isinstance(node, Struct) and node.functor == CONS and len(node.args) == 2:
            items.append(format_term(node.args[0]))
            node = node.args[1]
        if node == NIL:
            return "[" + ",".join(items) + "]"
        return "[" + ",".join(items) + "|" + format_term(node) + "]"
    return f"{term.functor}({','.join(format_term(a) for a in term.args)})"


def format_atom(a):
    if not a.args:
        return a.pred
    return f"{a.pred}({','.join(format_term(t) for t in a.args)})"


def format_clause(c):
    if not c.body:
        return f"{format_atom(c.head)}."
    return f"{format_atom(c.head)} :- {', '.join(format_atom(b) for b in c.body)}."


def format_program(p):
    return " ".join(format_clause(c) for c in p)
