"""Flat exterior calculus on the 2-D chart.

Every 2-form on a 2-D chart is ``f dx^dy`` and closed, so a
:class:`TwoForm2D` is just its coefficient field.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .expr import Expr, _point, eval_expr
from .jets import Tape

Field = Union[Expr, float, Callable]


def _scalar_at(f, p):
    if isinstance(f, (int, float)):
        return float(f)
    if callable(f):
        return float(f(p))
    return eval_expr(f, p)


@dataclass(frozen=True)
class OneForm:
    """``p dx + q dy``."""

    p: Field
    q: Field

    def at(self, point):
        return (_scalar_at(self.p, point), _scalar_at(self.q, point))


@dataclass(frozen=True)
class TwoForm2D:
    """``f dx^dy``; ``f`` is an Expr, a number, or a callable of the point."""

    f: Field

    def at(self, point) -> float:
        return _scalar_at(self.f, point)


class _CurlCoefficient:
    """``dq/dx - dp/dy`` evaluated through exact jets."""

    def __init__(self, p: Expr, q: Expr):
        self._p = Tape(p)
        self._q = Tape(q)

    def __call__(self, point):
        x, y = _point(point)
        return self._q.raw(x, y)[1] - self._p.raw(x, y)[2]


def exterior_d_oneform(w: OneForm) -> TwoForm2D:
    """``d(p dx + q dy) = (dq/dx - dp/dy) dx^dy`` for Expr coefficients."""
    return TwoForm2D(_CurlCoefficient(w.p, w.q))


def interior_product_2form(f: float, v) -> tuple[float, float]:
    """Contract ``f dx^dy`` with ``v`` in the first slot.

    Returns the covector ``(-f v2, f v1)`` in the (dx, dy) coframe.
    """
    v1, v2 = v
    return (-f * v2, f * v1)
