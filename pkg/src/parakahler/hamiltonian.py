"""Para-Hamiltonian dynamics.

With omega = x dx + y dy the Liouville form is lambda = J*(omega) and the
closed form is taken as Phi = phi(y) dx^dy with

    phi(y) = (cosh^2 2y - 1) / cosh 2y.

Solving i_Z Phi = dH gives Z_H = k(y) (H_y, -H_x), k = cosh 2y / (cosh^2 2y - 1),
which is singular on the axis y = 0. The exact exterior derivative of
lambda carries an extra ``2y sech 2y tanh 2y``; it is exposed by
:func:`pk_form_exterior` for comparison only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .calculus import Expr, Jet2, OneForm, Tape, exterior_d_oneform, interior_product_2form, parse_expr
from .errors import AxisSingularity
from .geometry import Cotangent, Jstar_apply, Point2, TangentVec, as_point
from .integrator import StepperConfig, Trajectory, integrate

AXIS_EPS = 1e-6

# lambda = -(y / cosh 2y) dx - x cosh 2y dy
LIOUVILLE_FORM = OneForm(parse_expr("-y/cosh(2*y)"), parse_expr("-x*cosh(2*y)"))
_D_LAMBDA = exterior_d_oneform(LIOUVILLE_FORM)


@dataclass(frozen=True)
class FlowRegion:
    """Open half-plane ``sign * y > AXIS_EPS``."""

    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def of(cls, p):
        y = as_point(p).y
        if abs(y) <= AXIS_EPS:
            raise AxisSingularity(f"y={y!r} lies within {AXIS_EPS:g} of the axis y=0",
                                  state=tuple(as_point(p)))
        return cls(1 if y > 0 else -1)

    def check(self, s):
        y = s[1]
        if not self.sign * y > AXIS_EPS:
            raise AxisSingularity(f"trajectory reached the axis strip (y={y!r})", state=tuple(s))


@dataclass(frozen=True)
class HamiltonianSystem:
    H: Expr
    backend: str | None = None
    _tape: Tape = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        H = parse_expr(self.H) if isinstance(self.H, str) else self.H
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "_tape", Tape(H, self.backend))

    def jet(self, p) -> Jet2:
        return self._tape(p)


def liouville_oneform(p) -> Cotangent:
    p = as_point(p)
    ch = math.cosh(2 * p.y)
    return Cotangent(p, -p.y / ch, -p.x * ch)


def liouville_via_jstar(p) -> Cotangent:
    """J*(x dx + y dy), computed through the geometry module."""
    p = as_point(p)
    return Jstar_apply(p, Cotangent(p, p.x, p.y))


def pk_form_paper(p) -> float:
    ch = math.cosh(2 * as_point(p).y)
    return (ch * ch - 1.0) / ch


def pk_form_exterior(p) -> float:
    """Coefficient of -d(lambda), differentiated exactly."""
    return -_D_LAMBDA.at(as_point(p))


def _axis_factor(y):
    if abs(y) <= AXIS_EPS:
        raise AxisSingularity(f"Z_H is undefined at y={y!r} (axis strip |y| <= {AXIS_EPS:g})")
    ch = math.cosh(2 * y)
    return ch / (ch * ch - 1.0)


def _zh(sys, x, y):
    k = _axis_factor(y)
    j = sys._tape.raw(x, y)
    return (k * j[2], -k * j[1])


def zh_field(sys: HamiltonianSystem, p) -> TangentVec:
    p = as_point(p)
    u1, u2 = _zh(sys, p.x, p.y)
    return TangentVec(p, u1, u2)


def hamilton_rhs(sys: HamiltonianSystem, p) -> tuple[float, float]:
    """(dx/dt, dy/dt); the same arithmetic as :func:`zh_field`."""
    if isinstance(p, Point2):
        return _zh(sys, p.x, p.y)
    return _zh(sys, float(p[0]), float(p[1]))


def verify_izh(sys: HamiltonianSystem, p) -> float:
    """max |i_{Z_H} Phi - dH| over the two covector components."""
    p = as_point(p)
    z = zh_field(sys, p)
    lhs = interior_product_2form(pk_form_paper(p), (z.u1, z.u2))
    j = sys.jet(p)
    return max(abs(lhs[0] - j.gx), abs(lhs[1] - j.gy))


def weighted_divergence(sys: HamiltonianSystem, p) -> float:
    """div(phi * Z_H) at ``p``, with phi the Phi coefficient.

    phi and k depend on y only, so
    d_x(phi k H_y) - d_y(phi k H_x) = phi k (H_xy - H_yx) - (phi k)' H_x.
    """
    p = as_point(p)
    k = _axis_factor(p.y)
    ch = math.cosh(2 * p.y)
    sh = math.sinh(2 * p.y)
    phi = pk_form_paper(p)
    dphi = 2.0 * sh + 2.0 * sh / (ch * ch)
    dk = 2.0 * (sh * sh - 2.0 * ch * ch) / (sh * sh * sh)
    j = sys.jet(p)
    fk = phi * k
    dfk = dphi * k + phi * dk
    div_x = fk * j.hxy          # d_x(phi k H_y)
    div_y = -(dfk * j.gx + fk * j.hxy)  # d_y(-phi k H_x)
    return div_x + div_y


def hamilton_flow(sys: HamiltonianSystem, p0, T: float, h: float, mode: str = "fixed",
                  tol: float = 1e-10) -> Trajectory:
    """Integrate the para-Hamiltonian equations from ``p0`` over [0, T].

    Records H, phi_paper and phi_exterior with every sample. Starting in the
    axis strip raises :class:`AxisSingularity`; reaching it later ends the
    trajectory with ``status='aborted'``.
    """
    if T < 0 or h <= 0:
        raise ValueError("need T >= 0 and h > 0")
    p0 = as_point(p0)
    region = FlowRegion.of(p0)
    tape = sys._tape

    def rhs(s):
        region.check(s)
        return _zh(sys, s[0], s[1])

    def monitors(t, s):
        return {"H": tape.raw(s[0], s[1])[0],
                "phi_paper": pk_form_paper(s),
                "phi_exterior": pk_form_exterior(s)}

    cfg = StepperConfig(h=min(h, T) if T > 0 else h, T=T, mode=mode, tol=tol)
    traj = integrate(rhs, (p0.x, p0.y), cfg, monitors=monitors, guard=region.check)
    if isinstance(traj.error, AxisSingularity):
        traj.error.t = traj.t_fail
        if traj.error.state is None:
            traj.error.state = tuple(traj.states[-1])
    return traj
