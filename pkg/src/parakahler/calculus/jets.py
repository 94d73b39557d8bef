"""Second-order jets of scalar fields: exact forward mode and a
central-difference oracle."""
from __future__ import annotations

from dataclasses import dataclass

from .. import _backend
from .._tape import TapeDomainError, compile_tape
from ..errors import EvalDomainError
from .expr import Expr, _point, eval_expr


@dataclass(frozen=True, slots=True)
class Jet2:
    """Value, gradient and (symmetric) Hessian of a field at a point."""

    value: float
    gx: float
    gy: float
    hxx: float
    hxy: float
    hyy: float

    @property
    def grad(self):
        return (self.gx, self.gy)

    @property
    def hess(self):
        return ((self.hxx, self.hxy), (self.hxy, self.hyy))


class Tape:
    """An expression compiled once for repeated jet evaluation."""

    __slots__ = ("expr", "nodes", "program", "backend")

    def __init__(self, expr: Expr, backend=None):
        kernel = _backend.get(backend)
        ops, lhs, rhs, consts, nodes = compile_tape(expr)
        self.expr = expr
        self.nodes = nodes
        self.program = kernel.Program(ops, lhs, rhs, consts)
        self.backend = kernel.NAME

    def raw(self, x, y):
        """Jet components as a plain 6-tuple ``(v, gx, gy, hxx, hxy, hyy)``."""
        try:
            return self.program.jet(x, y)
        except TapeDomainError as exc:
            raise EvalDomainError(exc.reason, self.nodes[exc.index]) from None

    def __call__(self, p) -> Jet2:
        x, y = _point(p)
        return Jet2(*self.raw(x, y))


def jet_eval(e: Expr | Tape, p, backend=None) -> Jet2:
    """Exact value, gradient and Hessian of ``e`` at ``p``."""
    tape = e if isinstance(e, Tape) else Tape(e, backend)
    return tape(p)


def default_step(x, y):
    return 1e-5 * max(1.0, abs(x)), 1e-5 * max(1.0, abs(y))


def fd_jet(e: Expr, p, h=None) -> Jet2:
    """Central-difference jet, O(h^2) in gradient and Hessian.

    ``h`` may be a scalar or an ``(hx, hy)`` pair; by default it is
    ``1e-5 * max(1, |coordinate|)`` per axis.
    """
    x, y = _point(p)
    if h is None:
        hx, hy = default_step(x, y)
    elif isinstance(h, tuple):
        hx, hy = h
    else:
        hx = hy = float(h)
    if hx <= 0 or hy <= 0:
        raise ValueError("finite-difference step must be positive")

    def f(a, b):
        return eval_expr(e, (a, b))

    f0 = f(x, y)
    fxp, fxm = f(x + hx, y), f(x - hx, y)
    fyp, fym = f(x, y + hy), f(x, y - hy)
    fpp, fpm = f(x + hx, y + hy), f(x + hx, y - hy)
    fmp, fmm = f(x - hx, y + hy), f(x - hx, y - hy)
    return Jet2(
        value=f0,
        gx=(fxp - fxm) / (2 * hx),
        gy=(fyp - fym) / (2 * hy),
        hxx=(fxp - 2 * f0 + fxm) / (hx * hx),
        hxy=(fpp - fpm - fmp + fmm) / (4 * hx * hy),
        hyy=(fyp - 2 * f0 + fym) / (hy * hy),
    )
