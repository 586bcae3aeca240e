"""Net-expression grammar: tokenizer, recursive-descent parser, evaluators.

Grammar (``eps`` is the smoothing parameter, ``x1..xn`` chart coordinates)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | atom
    atom   := number | "eps" | "x" digits | name
            | "pow" "(" expr "," ["-"] integer ")"
            | func "(" expr ")"                 func: exp sqrt abs sin cos tanh sinh cosh
            | "chi" "(" set ")"
            | "(" expr ")"
    set    := "even" | "odd" | "all" | "pow2" | "ap" "(" int "," int ")" | "{" int ("," int)* "}"

Manifests additionally use bracketed lists: ``[expr, ...]`` and
``[[expr, ...], ...]``.
"""

import math
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

from .errors import ParseError, TypeMismatch, UnknownName
from .gen_num import (
    EpsGrid,
    GenNumber,
    IndexSet,
    _unary,
    chi,
    const,
    divide,
    eps_net,
    gsqrt,
)

FUNCS = ("exp", "sqrt", "abs", "sin", "cos", "tanh", "sinh", "cosh")
_SCALAR = {
    "exp": math.exp,
    "sin": math.sin,
    "cos": math.cos,
    "tanh": math.tanh,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "abs": abs,
    "sqrt": lambda v: math.sqrt(abs(v)),
}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/(),{}\[\]=]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "id", "op", "end"
    text: str
    col: int


def tokenize(text: str, line: Optional[int] = None, col0: int = 1) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + col0 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - col0]!r}", line, col)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind) + col0))
        pos = m.end()
    out.append(Token("end", "", len(text) + col0))
    return out


# ------------------------------------------------------------------ AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Eps:
    pass


@dataclass(frozen=True)
class Coord:
    index: int  # 1-based


@dataclass(frozen=True)
class Name:
    name: str
    col: int


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object
    col: int


@dataclass(frozen=True)
class Pow:
    base: object
    n: int


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object


@dataclass(frozen=True)
class Chi:
    set: IndexSet


Node = Union[Num, Eps, Coord, Name, Neg, Bin, Pow, Call, Chi, list]


class Parser:
    """Recursive-descent parser over one line of text."""

    def __init__(self, text: str, line: Optional[int] = None, col0: int = 1):
        self.toks = tokenize(text, line, col0)
        self.i = 0
        self.line = line

    # -- helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[Token] = None):
        t = tok or self.tok
        raise ParseError(msg, self.line, t.col)

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.take()

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def done(self):
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")

    # -- grammar
    def value(self) -> Node:
        """An expression or a (nested) bracketed list of expressions."""
        if self.at("["):
            self.take()
            items = [self.value()]
            while self.at(","):
                self.take()
                items.append(self.value())
            self.expect("]")
            return items
        return self.expr()

    def expr(self) -> Node:
        node = self.term()
        while self.at("+") or self.at("-"):
            t = self.take()
            node = Bin(t.text, node, self.term(), t.col)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at("*") or self.at("/"):
            t = self.take()
            node = Bin(t.text, node, self.unary(), t.col)
        return node

    def unary(self) -> Node:
        if self.at("-"):
            self.take()
            return Neg(self.unary())
        if self.at("+"):
            self.take()
            return self.unary()
        return self.atom()

    def integer(self) -> int:
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        t = self.tok
        if t.kind != "num" or not t.text.isdigit():
            self.error(f"expected integer, found {t.text or 'end of input'!r}")
        self.take()
        return sign * int(t.text)

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.take()
            return Num(float(t.text))
        if self.at("("):
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind != "id":
            self.error(f"unexpected {t.text or 'end of input'!r}")
        self.take()
        name = t.text
        if name == "eps":
            return Eps()
        if re.fullmatch(r"x[1-9]\d*", name):
            return Coord(int(name[1:]))
        if name == "pow":
            self.expect("(")
            base = self.expr()
            self.expect(",")
            n = self.integer()
            self.expect(")")
            return Pow(base, n)
        if name in FUNCS:
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(name, arg)
        if name == "chi":
            self.expect("(")
            s = self.index_set()
            self.expect(")")
            return Chi(s)
        return Name(name, t.col)

    def index_set(self) -> IndexSet:
        t = self.tok
        if self.at("{"):
            self.take()
            ks = [self.integer()]
            while self.at(","):
                self.take()
                ks.append(self.integer())
            self.expect("}")
            return IndexSet.explicit(ks)
        if t.kind != "id":
            self.error(f"expected index set, found {t.text or 'end of input'!r}")
        self.take()
        if t.text == "even":
            return IndexSet.even()
        if t.text == "odd":
            return IndexSet.odd()
        if t.text == "all":
            return IndexSet.all()
        if t.text == "pow2":
            return IndexSet.pow2()
        if t.text == "ap":
            self.expect("(")
            a = self.integer()
            self.expect(",")
            d = self.integer()
            self.expect(")")
            if d < 1:
                self.error("progression step must be positive", t)
            return IndexSet.ap(a, d)
        self.error(f"unknown index set {t.text!r}", t)


def parse(text: str, line: Optional[int] = None, col0: int = 1) -> Node:
    """Parse a single expression (or bracketed list)."""
    p = Parser(text, line, col0)
    node = p.value()
    p.done()
    return node


# ------------------------------------------------------------ evaluation


def uses_coords(node: Node) -> bool:
    if isinstance(node, list):
        return any(uses_coords(x) for x in node)
    if isinstance(node, Coord):
        return True
    for attr in ("arg", "left", "right", "base"):
        sub = getattr(node, attr, None)
        if sub is not None and uses_coords(sub):
            return True
    return False


def to_gen(node: Node, grid: EpsGrid, env: Optional[Dict[str, GenNumber]] = None, line=None) -> GenNumber:
    """Evaluate an expression to a :class:`GenNumber`.

    Division checks invertibility of the divisor and raises
    :class:`~gennum.errors.DivisionByNonInvertible` otherwise.
    """
    env = env or {}
    if isinstance(node, list):
        raise TypeMismatch("expected a scalar expression, found a list")
    if isinstance(node, Num):
        return const(node.value, grid)
    if isinstance(node, Eps):
        return eps_net(grid)
    if isinstance(node, Coord):
        raise TypeMismatch(f"coordinate x{node.index} is only allowed in field definitions")
    if isinstance(node, Name):
        if node.name not in env:
            raise UnknownName(f"unknown name {node.name!r}" + (f" (line {line}, col {node.col})" if line else ""))
        val = env[node.name]
        if not isinstance(val, GenNumber):
            raise TypeMismatch(f"{node.name!r} is not a scalar net")
        return val
    if isinstance(node, Neg):
        return -to_gen(node.arg, grid, env, line)
    if isinstance(node, Bin):
        a = to_gen(node.left, grid, env, line)
        b = to_gen(node.right, grid, env, line)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return divide(a, b)
    if isinstance(node, Pow):
        return to_gen(node.base, grid, env, line) ** node.n
    if isinstance(node, Call):
        x = to_gen(node.arg, grid, env, line)
        if node.fn == "sqrt":
            return gsqrt(x)
        if node.fn == "abs":
            return abs(x)
        return _unary(node.fn, x)
    if isinstance(node, Chi):
        return chi(node.set, grid)
    raise TypeError(f"unknown node {node!r}")


def to_field(node: Node, grid: EpsGrid, env: Optional[Dict[str, GenNumber]] = None) -> Callable:
    """Compile an expression to a scalar function ``(eps, x) -> float``."""
    env = env or {}
    if isinstance(node, list):
        raise TypeMismatch("expected a scalar expression, found a list")
    if isinstance(node, Num):
        v = node.value
        return lambda e, x: v
    if isinstance(node, Eps):
        return lambda e, x: float(e)
    if isinstance(node, Coord):
        i = node.index - 1
        return lambda e, x: float(x[i])
    if isinstance(node, Name):
        if node.name not in env:
            raise UnknownName(f"unknown name {node.name!r}")
        val = env[node.name]
        if not isinstance(val, GenNumber):
            raise TypeMismatch(f"{node.name!r} is not a scalar net")
        f = val.evaluator
        return lambda e, x: f(e)
    if isinstance(node, Neg):
        f = to_field(node.arg, grid, env)
        return lambda e, x: -f(e, x)
    if isinstance(node, Bin):
        fa, fb = to_field(node.left, grid, env), to_field(node.right, grid, env)
        op = node.op
        if op == "+":
            return lambda e, x: fa(e, x) + fb(e, x)
        if op == "-":
            return lambda e, x: fa(e, x) - fb(e, x)
        if op == "*":
            return lambda e, x: fa(e, x) * fb(e, x)

        def quot(e, x):
            d = fb(e, x)
            return fa(e, x) / d if d != 0 else math.copysign(math.inf, fa(e, x))

        return quot
    if isinstance(node, Pow):
        f, n = to_field(node.base, grid, env), node.n
        return lambda e, x: f(e, x) ** n
    if isinstance(node, Call):
        f, g = to_field(node.arg, grid, env), _SCALAR[node.fn]
        return lambda e, x: g(f(e, x))
    if isinstance(node, Chi):
        s = node.set
        return lambda e, x: 1.0 if s.contains(grid.index_of(e)) else 0.0
    raise TypeError(f"unknown node {node!r}")


def parse_gen(text: str, grid: EpsGrid, env: Optional[Dict[str, GenNumber]] = None) -> GenNumber:
    """Parse and evaluate a scalar net expression."""
    node = parse(text)
    out = to_gen(node, grid, env)
    out.label = out.label or text.strip()
    return out
