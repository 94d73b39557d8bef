"""Linearised (postfix) form of an expression tree for the jet kernels.

Instruction ``i`` writes slot ``i``; operands refer to earlier slots.
Both kernel backends (:mod:`._kernels` and :mod:`._kernels_py`) consume
the same four parallel arrays ``ops, lhs, rhs, consts``.
"""
from __future__ import annotations

from .calculus.expr import Binary, Const, Unary, Var, const_value, is_integral_const

CONST, VARX, VARY, NEG, ADD, SUB, MUL, DIV, POWI, POWC, POW = range(11)
SIN, COS, SINH, COSH, TANH, EXP, LN, SQRT = range(11, 19)

_UNARY = {
    "neg": NEG, "sin": SIN, "cos": COS, "sinh": SINH, "cosh": COSH,
    "tanh": TANH, "exp": EXP, "ln": LN, "sqrt": SQRT,
}
_BINARY = {"add": ADD, "sub": SUB, "mul": MUL, "div": DIV}


class TapeDomainError(ArithmeticError):
    def __init__(self, index, reason):
        super().__init__(reason)
        self.index = index
        self.reason = reason


def compile_tape(expr):
    """Return ``(ops, lhs, rhs, consts, nodes)`` as Python lists."""
    ops, lhs, rhs, consts, nodes = [], [], [], [], []

    def emit(op, a, b, c, node):
        ops.append(op)
        lhs.append(a)
        rhs.append(b)
        consts.append(c)
        nodes.append(node)
        return len(ops) - 1

    def walk(e):
        if isinstance(e, Const):
            return emit(CONST, -1, -1, float(e.value), e)
        if isinstance(e, Var):
            return emit(VARX if e.name == "x" else VARY, -1, -1, 0.0, e)
        if isinstance(e, Unary):
            return emit(_UNARY[e.op], walk(e.arg), -1, 0.0, e)
        assert isinstance(e, Binary)
        if e.op == "pow" and const_value(e.right) is not None:
            op = POWI if is_integral_const(e.right) else POWC
            return emit(op, walk(e.left), -1, const_value(e.right), e)
        a = walk(e.left)
        b = walk(e.right)
        return emit(_BINARY.get(e.op, POW), a, b, 0.0, e)

    walk(expr)
    return ops, lhs, rhs, consts, nodes
