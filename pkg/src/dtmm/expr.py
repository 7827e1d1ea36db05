"""Closed-form expressions in one real variable ``x``.

Grammar (whitespace insignificant)::

    expr   := term { ("+" | "-") term }
    term   := factor { ("*" | "/") factor }
    factor := "-" factor | atom [ "^" factor ]
    atom   := NUMBER | "x" | IDENT "(" expr ")" | "(" expr ")"

``^`` is right-associative and binds tighter than unary minus, so
``-x^2`` is ``-(x^2)`` and ``2^-1`` is ``0.5``.

Parsed trees are immutable and compile to plain Python closures on
construction, so repeated evaluation inside quadrature loops stays cheap.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

from .errors import DomainError, ExpressionSyntaxError, UnknownFunctionError

__all__ = [
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "Expression",
    "parse_expression",
    "evaluate",
]

FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "abs": abs,
}

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _pow(a: float, b: float) -> float:
    # math.pow raises ValueError for negative base with fractional exponent
    # and for 0 to a negative power, instead of returning a complex number.
    return math.pow(a, b)


_BINARY: dict[str, Callable[[float, float], float]] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
    "^": _pow,
}


class Node:
    """Base class for expression tree nodes."""

    def compile(self) -> Callable[[float], float]:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    @property
    def precedence(self) -> int:
        return 5

    def depends_on_x(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Num(Node):
    value: float

    def compile(self):
        v = float(self.value)
        return lambda x: v

    def to_text(self) -> str:
        text = repr(float(self.value))
        return f"({text})" if self.value < 0 else text

    def depends_on_x(self) -> bool:
        return False


@dataclass(frozen=True)
class Var(Node):
    def compile(self):
        return lambda x: x

    def to_text(self) -> str:
        return "x"

    def depends_on_x(self) -> bool:
        return True


@dataclass(frozen=True)
class Neg(Node):
    operand: Node

    def compile(self):
        f = self.operand.compile()
        return lambda x: -f(x)

    @property
    def precedence(self) -> int:
        return _PRECEDENCE["neg"]

    def to_text(self) -> str:
        inner = self.operand.to_text()
        if self.operand.precedence < self.precedence:
            inner = f"({inner})"
        return f"-{inner}"

    def depends_on_x(self) -> bool:
        return self.operand.depends_on_x()


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node

    def compile(self):
        fl, fr, op = self.left.compile(), self.right.compile(), _BINARY[self.op]
        return lambda x: op(fl(x), fr(x))

    @property
    def precedence(self) -> int:
        return _PRECEDENCE[self.op]

    def to_text(self) -> str:
        p = self.precedence
        left, right = self.left.to_text(), self.right.to_text()
        if self.op == "^":
            # right-associative: only the base needs guarding
            if self.left.precedence <= p:
                left = f"({left})"
            if self.right.precedence < p and not isinstance(self.right, Neg):
                right = f"({right})"
        else:
            if self.left.precedence < p:
                left = f"({left})"
            if self.right.precedence <= p:
                right = f"({right})"
        return f"{left} {self.op} {right}"

    def depends_on_x(self) -> bool:
        return self.left.depends_on_x() or self.right.depends_on_x()


@dataclass(frozen=True)
class Call(Node):
    name: str
    arg: Node

    def compile(self):
        fn, fa = FUNCTIONS[self.name], self.arg.compile()
        return lambda x: fn(fa(x))

    def to_text(self) -> str:
        return f"{self.name}({self.arg.to_text()})"

    def depends_on_x(self) -> bool:
        return self.arg.depends_on_x()


@dataclass(frozen=True)
class Expression:
    """A parsed expression; call it like a function of ``x``.

    Evaluation either returns a finite float or raises
    :class:`~dtmm.errors.DomainError`.
    """

    root: Node
    source: str = ""
    _fn: Callable[[float], float] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_fn", self.root.compile())

    def __call__(self, x: float) -> float:
        try:
            value = self._fn(float(x))
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise DomainError(f"cannot evaluate {self.to_text()!r} at x={x!r}: {exc}") from None
        if not math.isfinite(value):
            raise DomainError(f"{self.to_text()!r} is not finite at x={x!r}")
        return value

    def to_text(self) -> str:
        return self.root.to_text()

    def __str__(self) -> str:
        return self.to_text()

    @property
    def is_constant(self) -> bool:
        return not self.root.depends_on_x()

    @classmethod
    def constant(cls, value: float) -> "Expression":
        node = Num(float(value)) if value >= 0 else Neg(Num(-float(value)))
        return cls(node, repr(float(value)))


def evaluate(expr: Expression, x: float) -> float:
    return expr(x)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    text: str
    offset: int  # byte offset


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    byte_pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", byte_pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), byte_pos))
        byte_pos += len(m.group().encode("utf-8"))
        pos = m.end()
    tokens.append(_Token("end", "", byte_pos))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.tok
        return ExpressionSyntaxError(message, tok.offset, self.text)

    def accept(self, *ops: str) -> str | None:
        if self.tok.kind == "op" and self.tok.text in ops:
            self.i += 1
            return self.tokens[self.i - 1].text
        return None

    def expect(self, op: str):
        if self.accept(op) is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {op!r}, found {found!r}")

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while (op := self.accept("+", "-")) is not None:
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while (op := self.accept("*", "/")) is not None:
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.accept("-") is not None:
            return Neg(self.factor())
        base = self.atom()
        if self.accept("^") is not None:
            return BinOp("^", base, self.factor())
        return base

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.i += 1
            if tok.text == "x":
                return Var()
            if tok.text not in FUNCTIONS:
                raise UnknownFunctionError(f"unknown function {tok.text!r}", tok.offset, self.text)
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(tok.text, arg)
        if self.accept("(") is not None:
            node = self.expr()
            self.expect(")")
            return node
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse_expression(text: str) -> Expression:
    """Parse ``text`` into an :class:`Expression`.

    Raises:
        ExpressionSyntaxError: malformed input; ``offset`` locates the
            offending byte.
        UnknownFunctionError: an identifier other than ``x`` or a
            supported function name.
    """
    if not text or not text.strip():
        raise ExpressionSyntaxError("empty expression", 0, text or "")
    return Expression(_Parser(text).parse(), text)
