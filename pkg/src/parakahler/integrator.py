"""Explicit fourth-order Runge-Kutta for autonomous 2-D vector fields.

Failures inside a run do not raise: the trajectory is returned with
``status == "aborted"`` and everything recorded up to the failure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from .errors import ParaKahlerError

State = tuple  # (x, y)
RHS = Callable[[State], State]
Monitors = Callable[[float, State], Mapping[str, float]]

# errors that end a run gracefully; anything else is a bug and propagates
ABORTING = (ParaKahlerError, ArithmeticError)


@dataclass(frozen=True)
class StepperConfig:
    h: float
    T: float
    mode: str = "fixed"  # "fixed" or "halving"
    tol: float = 1e-10
    max_steps: int = 10_000_000
    max_halvings: int = 30

    def __post_init__(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError("step size h must be positive")
        if not (self.T >= 0 and math.isfinite(self.T)):
            raise ValueError("end time T must be non-negative")
        if self.T > 0 and self.h > self.T:
            raise ValueError("step size h must not exceed T")
        if self.mode not in ("fixed", "halving"):
            raise ValueError(f"unknown stepper mode {self.mode!r}")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


@dataclass
class Trajectory:
    t: np.ndarray
    states: np.ndarray  # shape (n, 2)
    monitors: dict[str, np.ndarray]
    h: float
    status: str = "completed"
    reason: Optional[str] = None
    t_fail: Optional[float] = None
    error: Optional[BaseException] = field(default=None, repr=False)

    @property
    def x(self):
        return self.states[:, 0]

    @property
    def y(self):
        return self.states[:, 1]

    @property
    def completed(self):
        return self.status == "completed"

    def __len__(self):
        return len(self.t)


def rk4_step(rhs: RHS, s: State, h: float) -> State:
    """One classical RK4 step. An rhs error gets a ``stage`` attribute (1-4)."""
    x, y = s
    stage = 1
    try:
        k1x, k1y = rhs((x, y))
        stage = 2
        k2x, k2y = rhs((x + 0.5 * h * k1x, y + 0.5 * h * k1y))
        stage = 3
        k3x, k3y = rhs((x + 0.5 * h * k2x, y + 0.5 * h * k2y))
        stage = 4
        k4x, k4y = rhs((x + h * k3x, y + h * k3y))
    except Exception as exc:
        exc.stage = stage
        raise
    return (x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
            y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y))


class _Recorder:
    def __init__(self, monitors):
        self.monitors = monitors
        self.t = []
        self.states = []
        self.values = []
        self.names = None

    def record(self, t, s):
        row = dict(self.monitors(t, s)) if self.monitors is not None else {}
        names = tuple(row)
        if self.names is None:
            self.names = names
        elif names != self.names:
            raise ValueError(f"monitor names changed from {self.names} to {names}")
        self.t.append(t)
        self.states.append(s)
        self.values.append([row[n] for n in names])

    def finish(self, h, status="completed", reason=None, t_fail=None, error=None):
        names = self.names or ()
        vals = np.array(self.values, dtype=float).reshape(len(self.t), len(names))
        return Trajectory(
            t=np.array(self.t, dtype=float),
            states=np.array(self.states, dtype=float).reshape(len(self.t), 2),
            monitors={n: vals[:, i] for i, n in enumerate(names)},
            h=h, status=status, reason=reason, t_fail=t_fail, error=error,
        )


def _describe(exc):
    stage = getattr(exc, "stage", None)
    where = f" (RK stage {stage})" if stage else ""
    return f"{type(exc).__name__}: {exc}{where}"


def integrate(rhs: RHS, s0: State, cfg: StepperConfig, monitors: Monitors | None = None,
              guard: Callable[[State], None] | None = None) -> Trajectory:
    """Integrate ``s' = rhs(s)`` from ``s0`` over ``[0, cfg.T]``.

    ``monitors(t, s)`` returns named values recorded with every sample;
    ``guard(s)`` raises on states that must not be entered.
    """
    rec = _Recorder(monitors)
    s = (float(s0[0]), float(s0[1]))
    try:
        if guard is not None:
            guard(s)
        rec.record(0.0, s)
    except ABORTING as exc:
        return rec.finish(cfg.h, "aborted", _describe(exc), 0.0, exc)
    if cfg.T == 0:
        return rec.finish(cfg.h)
    if cfg.mode == "fixed":
        return _fixed(rhs, s, cfg, rec, guard)
    return _halving(rhs, s, cfg, rec, guard)


def _step_count(T, h):
    n = round(T / h)
    if n >= 1 and abs(n * h - T) <= 1e-9 * T:
        return n
    return math.ceil(T / h)


def _fixed(rhs, s, cfg, rec, guard):
    n = _step_count(cfg.T, cfg.h)
    if n > cfg.max_steps:
        return rec.finish(cfg.h, "aborted", f"max_steps={cfg.max_steps} exhausted", 0.0)
    t = 0.0
    for k in range(n):
        t_next = cfg.T if k == n - 1 else (k + 1) * cfg.h
        try:
            s = rk4_step(rhs, s, t_next - t)
            if guard is not None:
                guard(s)
            rec.record(t_next, s)
        except ABORTING as exc:
            return rec.finish(cfg.h, "aborted", _describe(exc), t, exc)
        t = t_next
    return rec.finish(cfg.h)


def _halving(rhs, s, cfg, rec, guard):
    """Step doubling: accept two half steps when they agree with one full
    step to ``tol``, otherwise halve; grow back toward ``cfg.h`` after
    easy steps."""
    t = 0.0
    h = cfg.h
    h_min = cfg.h * 0.5 ** cfg.max_halvings
    steps = 0
    while t < cfg.T:
        if steps >= cfg.max_steps:
            return rec.finish(cfg.h, "aborted", f"max_steps={cfg.max_steps} exhausted", t)
        dt = min(h, cfg.T - t)
        try:
            full = rk4_step(rhs, s, dt)
            half = rk4_step(rhs, rk4_step(rhs, s, 0.5 * dt), 0.5 * dt)
            if guard is not None:
                guard(full)
                guard(half)
            err = max(abs(full[0] - half[0]), abs(full[1] - half[1]))
            failure = None
        except ABORTING as exc:
            err = math.inf
            failure = exc
        if not err <= cfg.tol:
            if 0.5 * dt < h_min:
                exc = failure
                reason = _describe(exc) if exc is not None else (
                    f"step size fell below {h_min:g} (error {err:g})")
                return rec.finish(cfg.h, "aborted", reason, t, exc)
            h = 0.5 * dt
            continue
        t_next = cfg.T if dt == cfg.T - t else t + dt
        s = half
        steps += 1
        try:
            rec.record(t_next, s)
        except ABORTING as exc:
            return rec.finish(cfg.h, "aborted", _describe(exc), t, exc)
        t = t_next
        if err < cfg.tol / 32 and h < cfg.h:
            h = min(cfg.h, 2 * h)
    return rec.finish(cfg.h)
