"""Recursive-descent parser for the scalar-field expression language.

Grammar (whitespace insignificant, ASCII only)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?          # right-associative, binds tighter than "-"
    atom   := NUMBER | "x" | "y" | FUNC "(" expr ")" | "(" expr ")"
    FUNC   := sin | cos | sinh | cosh | tanh | exp | ln | sqrt

So ``-x^2`` is ``-(x^2)`` and ``2^-1`` is ``2^(-1)``.
"""
from __future__ import annotations

import re

from ..errors import ExprSyntaxError, UnknownFunction, UnknownIdentifier
from .expr import FUNCTIONS, VARIABLES, Binary, Const, Expr, Unary, Var

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def accept(self, value):
        if self.tok[0] == "op" and self.tok[1] == value:
            return self.advance()
        return None

    def expect(self, value):
        t = self.accept(value)
        if t is None:
            kind, text, pos = self.tok
            found = "end of input" if kind == "end" else repr(text)
            raise ExprSyntaxError(f"expected {value!r}, found {found}", pos)
        return t

    def parse(self):
        e = self.expr()
        kind, text, pos = self.tok
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", pos)
        return e

    def expr(self):
        e = self.term()
        while True:
            t = self.accept("+") or self.accept("-")
            if t is None:
                return e
            e = Binary("add" if t[1] == "+" else "sub", e, self.term(), t[2])

    def term(self):
        e = self.unary()
        while True:
            t = self.accept("*") or self.accept("/")
            if t is None:
                return e
            e = Binary("mul" if t[1] == "*" else "div", e, self.unary(), t[2])

    def unary(self):
        t = self.accept("-")
        if t is not None:
            return Unary("neg", self.unary(), t[2])
        return self.power()

    def power(self):
        base = self.atom()
        t = self.accept("^")
        if t is None:
            return base
        return Binary("pow", base, self.unary(), t[2])

    def atom(self):
        kind, text, pos = self.tok
        if kind == "num":
            self.advance()
            return Const(float(text), pos)
        if kind == "name":
            self.advance()
            if self.tok[0] == "op" and self.tok[1] == "(":
                if text not in FUNCTIONS:
                    raise UnknownFunction(f"unknown function {text!r}", pos)
                self.advance()
                arg = self.expr()
                self.expect(")")
                return Unary(text, arg, pos)
            if text in VARIABLES:
                return Var(text, pos)
            if text in FUNCTIONS:
                raise ExprSyntaxError(f"function {text!r} needs '('", self.tok[2])
            raise UnknownIdentifier(f"unknown identifier {text!r}", pos)
        if kind == "op" and text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        found = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"expected operand, found {found}", pos)


def parse_expr(text: str) -> Expr:
    """Parse ``text`` into an :data:`Expr` tree.

    Raises :class:`ExprSyntaxError` (with ``offset``) on malformed input,
    :class:`UnknownIdentifier` for names other than ``x``/``y`` and
    :class:`UnknownFunction` for unsupported function calls.
    """
    if not text.isascii():
        bad = next(i for i, ch in enumerate(text) if not ch.isascii())
        raise ExprSyntaxError("non-ASCII character", len(text[:bad].encode()))
    return _Parser(text).parse()
