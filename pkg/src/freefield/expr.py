"""Noncommutative rational expressions: syntax tree, parser and printer.

Grammar (left-associative, whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := 'inv' '(' expr ')' | '(' expr ')' | '-' factor | NUMBER | LETTER

NUMBER is an integer or ``p/q``; a LETTER is any other identifier.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import InverseOfZero, ParseError
from .linalg import Matrix, invert

__all__ = [
    "Letter",
    "Const",
    "Add",
    "Sub",
    "Mul",
    "Neg",
    "Inv",
    "Expr",
    "parse",
    "to_text",
    "letters",
    "depth",
    "evaluate",
    "expand",
    "Poly",
]


@dataclass(frozen=True)
class Letter:
    name: str


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Inv:
    arg: "Expr"


Expr = Union[Letter, Const, Add, Sub, Mul, Neg, Inv]

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # trailing whitespace
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            if "/" in num and int(num.split("/")[1]) == 0:
                raise ParseError("zero denominator", start)
            out.append(("num", num, start))
        elif name is not None:
            out.append(("inv" if name == "inv" else "name", name, start))
        elif op in "+-*()":
            out.append((op, op, start))
        else:
            raise ParseError(f"unexpected character {op!r}", start)
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, alphabet: Optional[Sequence[str]]):
        self.toks = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str) -> Tuple[str, str, int]:
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Expr:
        node = self.term()
        while self.peek() in "+-":
            op = self.take(self.peek())[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek() == "*":
            self.take("*")
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Expr:
        kind, text, pos = self.toks[self.i]
        if kind == "inv":
            self.take("inv")
            self.take("(")
            node = self.expr()
            self.take(")")
            return Inv(node)
        if kind == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        if kind == "-":
            self.take("-")
            return Neg(self.factor())
        if kind == "num":
            self.take("num")
            return Const(Fraction(text))
        if kind == "name":
            if self.alphabet is not None and text not in self.alphabet:
                raise ParseError(f"unknown letter {text!r}", pos)
            self.take("name")
            return Letter(text)
        what = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"unexpected {what}", pos)


def parse(text: str, alphabet: Optional[Sequence[str]] = None) -> Expr:
    p = _Parser(text, alphabet)
    node = p.expr()
    p.take("end")
    return node


_PREC = {Add: 1, Sub: 1, Mul: 2, Neg: 3}


def to_text(e: Expr) -> str:
    """Print with the minimal parentheses needed to parse back to ``e``."""
    if isinstance(e, Letter):
        return e.name
    if isinstance(e, Const):
        if e.value < 0:
            return f"-{-e.value}"
        return str(e.value)
    if isinstance(e, Inv):
        return f"inv({to_text(e.arg)})"
    if isinstance(e, Neg):
        inner = to_text(e.arg)
        if isinstance(e.arg, (Add, Sub, Mul)):
            inner = f"({inner})"
        return "-" + inner
    op = {Add: " + ", Sub: " - ", Mul: "*"}[type(e)]
    p = _PREC[type(e)]
    left = to_text(e.left)
    if type(e.left) in _PREC and _PREC[type(e.left)] < p:
        left = f"({left})"
    right = to_text(e.right)
    # right operands of the same level need parentheses (left associativity)
    if type(e.right) in _PREC and _PREC[type(e.right)] <= p and not isinstance(e.right, Neg):
        right = f"({right})"
    return left + op + right


def _children(e: Expr) -> Tuple[Expr, ...]:
    if isinstance(e, (Add, Sub, Mul)):
        return (e.left, e.right)
    if isinstance(e, (Neg, Inv)):
        return (e.arg,)
    return ()


def letters(e: Expr) -> Tuple[str, ...]:
    """Letters in order of first appearance."""
    seen: Dict[str, None] = {}

    def walk(n):
        if isinstance(n, Letter):
            seen.setdefault(n.name)
        for c in _children(n):
            walk(c)

    walk(e)
    return tuple(seen)


def depth(e: Expr) -> int:
    return 1 + max((depth(c) for c in _children(e)), default=0)


def evaluate(e: Expr, point: Mapping[str, Matrix], size: Optional[int] = None) -> Optional[Matrix]:
    """Evaluate directly at square matrices; None if some inverse is undefined."""
    if size is None:
        size = next(iter(point.values())).rows if point else 1
    I = Matrix.identity(size)

    def ev(n) -> Optional[Matrix]:
        if isinstance(n, Letter):
            return point[n.name]
        if isinstance(n, Const):
            return I.scale(n.value)
        if isinstance(n, Neg):
            a = ev(n.arg)
            return None if a is None else -a
        if isinstance(n, Inv):
            a = ev(n.arg)
            return None if a is None else invert(a)
        a = ev(n.left)
        if a is None:
            return None
        b = ev(n.right)
        if b is None:
            return None
        if isinstance(n, Add):
            return a + b
        if isinstance(n, Sub):
            return a - b
        return a @ b

    return ev(e)


Poly = Dict[Tuple[str, ...], Fraction]


def _clean(p: Poly) -> Poly:
    return {w: c for w, c in p.items() if c}


def expand(e: Expr) -> Poly:
    """Expand an inverse-free expression into ``{word: coefficient}``.

    Inverses of nonzero scalars are allowed; any other inverse raises
    ValueError (and InverseOfZero for the inverse of 0).
    """
    if isinstance(e, Letter):
        return {(e.name,): Fraction(1)}
    if isinstance(e, Const):
        return _clean({(): e.value})
    if isinstance(e, Neg):
        return {w: -c for w, c in expand(e.arg).items()}
    if isinstance(e, Inv):
        p = expand(e.arg)
        if not p:
            raise InverseOfZero("inverse of 0")
        if set(p) != {()}:
            raise ValueError("only scalars can be inverted in a polynomial")
        return {(): 1 / p[()]}
    a, b = expand(e.left), expand(e.right)
    if isinstance(e, Mul):
        out: Poly = {}
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                out[w1 + w2] = out.get(w1 + w2, Fraction(0)) + c1 * c2
        return _clean(out)
    sign = 1 if isinstance(e, Add) else -1
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, Fraction(0)) + sign * c
    return _clean(out)


def walk(e: Expr) -> Iterator[Expr]:
    yield e
    for c in _children(e):
        yield from walk(c)
