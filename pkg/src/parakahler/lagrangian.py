"""Euler-Lagrange dynamics on the para-Kahler space form.

The Lagrangian is a scalar field L(x, y) on the base chart; the semispray
xi = X d/dx + Y d/dy has X = dx/dt, Y = dy/dt along its integral curves,
and the second chart (a, b) used for the 2-form bookkeeping is identified
with (x, y). With ch = cosh 2y the Euler-Lagrange equations read

    ch * d/dt(L_y) + L_x = 0,        (1/ch) * d/dt(L_x) + L_y = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .calculus import Expr, Jet2, Tape, parse_expr
from .errors import DegenerateLagrangian
from .geometry import Cotangent, SpaceForm, TangentVec, as_point
from .integrator import StepperConfig, Trajectory, integrate

REG_EPS = 1e-12


@dataclass(frozen=True)
class ELState:
    p: tuple
    vel: tuple  # (X, Y)

    def __post_init__(self):
        vals = (*self.p, *self.vel)
        if not all(math.isfinite(float(v)) for v in vals):
            raise ValueError("state components must be finite")


@dataclass(frozen=True)
class LagrangianSystem:
    L: Expr
    sf: SpaceForm = SpaceForm(4.0)
    backend: str | None = None
    _tape: Tape = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        L = parse_expr(self.L) if isinstance(self.L, str) else self.L
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "_tape", Tape(L, self.backend))

    def jet(self, p) -> Jet2:
        return self._tape(p)


def _xy(p):
    p = as_point(p)
    return p.x, p.y


def liouville_field(s: ELState) -> TangentVec:
    """V = J xi = (-Y / ch, -X ch)."""
    x, y = _xy(s.p)
    X, Y = s.vel
    ch = math.cosh(2 * y)
    return TangentVec(as_point(s.p), -Y / ch, -X * ch)


def dJ_of(sys: LagrangianSystem, p) -> Cotangent:
    """d_J L = -ch L_y dx - (1/ch) L_x dy."""
    j = sys.jet(p)
    ch = math.cosh(2 * as_point(p).y)
    return Cotangent(as_point(p), -ch * j.gy, -(1.0 / ch) * j.gx)


def phiL_coefficients(sys: LagrangianSystem, p) -> np.ndarray:
    """Coefficients of Phi_L laid out as

        [[da^dx, db^dx],      = [[ch L_xy, ch L_yy],
         [da^dy, db^dy]]         [L_xx/ch, L_xy/ch]]
    """
    j = sys.jet(p)
    ch = math.cosh(2 * as_point(p).y)
    return np.array([[ch * j.hxy, ch * j.hyy], [j.hxx / ch, j.hxy / ch]])


def _energy_parts(sys, s):
    j = sys.jet(s.p)
    X, Y = s.vel
    ch = math.cosh(2 * as_point(s.p).y)
    return j, -(Y / ch) * j.gx, (X * ch) * j.gy


def energy(sys: LagrangianSystem, s: ELState) -> float:
    """E_L = V(L) - L with V the Liouville field."""
    j, a, b = _energy_parts(sys, s)
    return a - b - j.value


def energy_as_printed(sys: LagrangianSystem, s: ELState) -> float:
    """The energy with the second term's sign flipped (``+X ch L_y``);
    differs from :func:`energy` by ``2 X ch L_y``."""
    j, a, b = _energy_parts(sys, s)
    return a + b - j.value


def el_residual(sys: LagrangianSystem, s: ELState) -> tuple[float, float]:
    """Left-hand sides of the Euler-Lagrange equations with d/dt expanded
    by the chain rule along the velocity ``s.vel``."""
    j = sys.jet(s.p)
    X, Y = s.vel
    ch = math.cosh(2 * as_point(s.p).y)
    dLy_dt = j.hxy * X + j.hyy * Y
    dLx_dt = j.hxx * X + j.hxy * Y
    return (ch * dLy_dt + j.gx, (1.0 / ch) * dLx_dt + j.gy)


def contraction_coefficients(sys: LagrangianSystem, s: ELState) -> tuple[float, float]:
    """dx and dy coefficients of ``i_xi Phi_L - dE_L`` written with the
    second-chart partials L_ay, L_by, L_ax, L_bx, then (a, b) := (x, y)."""
    j = sys.jet(s.p)
    X, Y = s.vel
    ch = math.cosh(2 * as_point(s.p).y)
    L_ax, L_bx = j.hxx, j.hxy
    L_ay, L_by = j.hxy, j.hyy
    return (ch * (L_ay * X + L_by * Y) + j.gx,
            (1.0 / ch) * (L_ax * X + L_bx * Y) + j.gy)


def semispray_solve(sys: LagrangianSystem, p) -> tuple[float, float]:
    """The unique velocity (X, Y) that zeroes :func:`el_residual` at ``p``."""
    j = sys.jet(p)
    ch = math.cosh(2 * as_point(p).y)
    det_hess = j.hxx * j.hyy - j.hxy * j.hxy
    scale = max(1.0, abs(j.hxx), abs(j.hyy), abs(j.hxy)) ** 2
    if abs(det_hess) <= REG_EPS * scale:
        raise DegenerateLagrangian(f"Hessian of L is singular at {tuple(as_point(p))}")
    # L_xy X + L_yy Y = -L_x / ch ;  L_xx X + L_xy Y = -L_y ch
    r1 = -j.gx / ch
    r2 = -j.gy * ch
    D = j.hxy * j.hxy - j.hyy * j.hxx
    X = (r1 * j.hxy - j.hyy * r2) / D
    Y = (j.hxy * r2 - j.hxx * r1) / D
    return (X, Y)


EL_COLUMNS = ("xdot", "ydot", "E_L", "res1", "res2")


def el_monitors(sys: LagrangianSystem):
    def monitors(t, s):
        vel = semispray_solve(sys, s)
        st = ELState(s, vel)
        r1, r2 = el_residual(sys, st)
        return {"xdot": vel[0], "ydot": vel[1], "E_L": energy(sys, st),
                "res1": r1, "res2": r2}
    return monitors


def el_flow(sys: LagrangianSystem, p0, T: float, h: float, mode: str = "fixed",
            reverse: bool = False) -> Trajectory:
    """Integrate p' = semispray_solve(p) from ``p0`` over [0, T].

    ``reverse=True`` integrates the time-reversed field p' = -semispray(p).
    Raises :class:`DegenerateLagrangian` if ``p0`` itself is degenerate; a
    degeneracy met later ends the trajectory with ``status='aborted'``.
    """
    if T <= 0 or h <= 0:
        raise ValueError("T and h must be positive")
    p0 = as_point(p0)
    semispray_solve(sys, p0)
    sign = -1.0 if reverse else 1.0

    def rhs(s):
        X, Y = semispray_solve(sys, s)
        return (sign * X, sign * Y)

    return integrate(rhs, (p0.x, p0.y), StepperConfig(h=min(h, T), T=T, mode=mode),
                     monitors=el_monitors(sys))
