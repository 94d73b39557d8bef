"""Expression trees for scalar fields on the (x, y) chart.

Nodes are immutable dataclasses. ``pos`` records the source offset of a
node when it came from the parser and is ignored by equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

from ..errors import EvalDomainError

FUNCTIONS = ("sin", "cos", "sinh", "cosh", "tanh", "exp", "ln", "sqrt")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")
VARIABLES = ("x", "y")

_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}


@dataclass(frozen=True, slots=True)
class Const:
    value: float
    pos: int = field(default=-1, compare=False, repr=False)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Var:
    name: str
    pos: int = field(default=-1, compare=False, repr=False)

    def __post_init__(self):
        if self.name not in VARIABLES:
            raise ValueError(f"unknown variable {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Unary:
    op: str  # "neg" or one of FUNCTIONS
    arg: "Expr"
    pos: int = field(default=-1, compare=False, repr=False)

    def __post_init__(self):
        if self.op != "neg" and self.op not in FUNCTIONS:
            raise ValueError(f"unknown unary op {self.op!r}")

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    pos: int = field(default=-1, compare=False, repr=False)

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown binary op {self.op!r}")

    def __str__(self):
        return to_text(self)


Expr = Union[Const, Var, Unary, Binary]


def const_value(e):
    """Value of a constant or negated constant, else None."""
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Unary) and e.op == "neg":
        v = const_value(e.arg)
        return None if v is None else -v
    return None


def is_integral_const(e) -> bool:
    v = const_value(e)
    return v is not None and v.is_integer()


def to_text(e: Expr) -> str:
    """Fully parenthesised infix text that parses back to an equal tree
    (up to ``neg(c)`` vs ``Const(-c)``)."""
    if isinstance(e, Const):
        v = float(e.value)
        if not math.isfinite(v):
            raise ValueError(f"cannot print non-finite constant {v!r}")
        s = repr(v)
        return f"({s})" if v < 0 or s.startswith("-") else s
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        if e.op == "neg":
            return f"(-{to_text(e.arg)})"
        return f"{e.op}({to_text(e.arg)})"
    return f"({to_text(e.left)} {_SYMBOL[e.op]} {to_text(e.right)})"


def _point(p):
    x, y = (p.x, p.y) if hasattr(p, "x") else p
    return float(x), float(y)


def eval_expr(e: Expr, p) -> float:
    """Evaluate ``e`` at the chart point ``p`` in IEEE double precision."""
    x, y = _point(p)
    return _eval(e, x, y)


def _eval(e, x, y):
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Var):
        return x if e.name == "x" else y
    if isinstance(e, Unary):
        u = _eval(e.arg, x, y)
        op = e.op
        if op == "neg":
            return -u
        if op == "ln":
            if u <= 0.0:
                raise EvalDomainError("ln of non-positive value", e)
            return math.log(u)
        if op == "sqrt":
            if u < 0.0:
                raise EvalDomainError("sqrt of negative value", e)
            return math.sqrt(u)
        try:
            return getattr(math, op)(u)
        except OverflowError:
            raise EvalDomainError("overflow", e) from None
    a = _eval(e.left, x, y)
    b = _eval(e.right, x, y)
    op = e.op
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0.0:
            raise EvalDomainError("division by zero", e)
        return a / b
    return _pow(e, a, b)


def _pow(e, a, b):
    try:
        if is_integral_const(e.right):
            if a == 0.0 and b < 0:
                raise EvalDomainError("zero to a negative power", e)
            return a**b
        if a < 0.0 or (a == 0.0 and not isinstance(e.right, Const)):
            raise EvalDomainError("non-integer power of non-positive base", e)
        if a == 0.0:
            if b <= 0:
                raise EvalDomainError("zero to a non-positive power", e)
            return 0.0
        return a**b
    except OverflowError:
        raise EvalDomainError("overflow", e) from None


# -- symbolic derivative -----------------------------------------------------
# Only used to build exact forms (d(df)) and as a second differentiation route
# in tests; no simplification beyond folding 0 and 1.

ZERO = Const(0.0)
ONE = Const(1.0)


def _is(e, v):
    return isinstance(e, Const) and e.value == v


def _add(a, b):
    if _is(a, 0.0):
        return b
    if _is(b, 0.0):
        return a
    return Binary("add", a, b)


def _sub(a, b):
    if _is(b, 0.0):
        return a
    if _is(a, 0.0):
        return Unary("neg", b)
    return Binary("sub", a, b)


def _mul(a, b):
    if _is(a, 0.0) or _is(b, 0.0):
        return ZERO
    if _is(a, 1.0):
        return b
    if _is(b, 1.0):
        return a
    return Binary("mul", a, b)


def _div(a, b):
    if _is(a, 0.0):
        return ZERO
    if _is(b, 1.0):
        return a
    return Binary("div", a, b)


def diff(e: Expr, var: str) -> Expr:
    """Symbolic partial derivative of ``e`` with respect to ``var``."""
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == var else ZERO
    if isinstance(e, Unary):
        u, du = e.arg, diff(e.arg, var)
        if _is(du, 0.0):
            return ZERO
        op = e.op
        if op == "neg":
            return Unary("neg", du)
        if op == "sin":
            outer = Unary("cos", u)
        elif op == "cos":
            outer = Unary("neg", Unary("sin", u))
        elif op == "sinh":
            outer = Unary("cosh", u)
        elif op == "cosh":
            outer = Unary("sinh", u)
        elif op == "tanh":
            outer = _sub(ONE, Binary("pow", e, Const(2.0)))
        elif op == "exp":
            outer = e
        elif op == "ln":
            return _div(du, u)
        else:  # sqrt
            return _div(du, _mul(Const(2.0), e))
        return _mul(outer, du)
    a, b = e.left, e.right
    da, db = diff(a, var), diff(b, var)
    op = e.op
    if op == "add":
        return _add(da, db)
    if op == "sub":
        return _sub(da, db)
    if op == "mul":
        return _add(_mul(da, b), _mul(a, db))
    if op == "div":
        return _div(_sub(_mul(da, b), _mul(a, db)), Binary("pow", b, Const(2.0)))
    # pow
    n = const_value(b)
    if n is not None:
        if n == 0.0:
            return ZERO
        lowered = ONE if n == 1.0 else Binary("pow", a, Const(n - 1.0))
        return _mul(_mul(Const(n), lowered), da)
    # a^b = exp(b ln a)
    return _mul(e, _add(_mul(db, Unary("ln", a)), _div(_mul(b, da), a)))
