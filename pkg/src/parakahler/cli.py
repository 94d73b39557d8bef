"""Command-line interface: ``parakahler {verify,curvature,lagrange,hamilton}``.

Exit status is 0 iff every check of the command passed, 1 when a check
failed or a flow aborted, 2 for usage errors. Random sampling uses
``numpy.random.Generator(numpy.random.PCG64(seed))``.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import platform
import sys

import numpy as np

from . import __version__
from . import geometry as geo
from ._backend import default as _kernel
from .errors import AxisSingularity, DegenerateLagrangian, DegeneratePlane, ExprSyntaxError
from .hamiltonian import AXIS_EPS, HamiltonianSystem, hamilton_flow
from .lagrangian import LagrangianSystem, el_flow

SAMPLE_RANGE = 2.0


class UsageError(Exception):
    pass


# -- output ------------------------------------------------------------------

def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _status_value(v):
    if isinstance(v, str) and (" " in v or not v):
        return json.dumps(v)
    return _fmt(v)


def _jsonable(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def render(command, params, columns, rows, status, fmt):
    if fmt == "csv":
        buf = io.StringIO(newline="")
        buf.write(",".join(columns) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        buf.write("# " + " ".join(f"{k}={_status_value(v)}" for k, v in status.items()) + "\n")
        return buf.getvalue()
    doc = {
        "command": command,
        "parameters": params,
        "versions": {
            "parakahler": __version__,
            "numpy": np.__version__,
            "python": platform.python_version(),
            "kernel_backend": _kernel.NAME,
        },
        "columns": list(columns),
        "data": {c: [_jsonable(r[i]) for r in rows] for i, c in enumerate(columns)},
        "status": {k: _jsonable(v) for k, v in status.items()},
    }
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def _emit(args, text):
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- verify ------------------------------------------------------------------

def _scaled(diff, *terms):
    return abs(diff) / max(1.0, *(abs(t) for t in terms))


def verify_identities(c, samples, seed):
    """Max scaled residual per identity over ``samples`` random points.

    Returns a list of ``(name, max_residual, tolerance, gating)``; the
    J-invariance R(JX,JY,Z,V) = R(X,Y,Z,V) is reported but never gates.
    """
    sf = geo.SpaceForm(c)
    rng = np.random.Generator(np.random.PCG64(seed))
    eye = np.eye(2)
    checks = {
        "J_squared": (1e-12, True),
        "Jstar_squared": (1e-12, True),
        "J_skew_symmetric": (1e-12, True),
        "J_orthogonal": (1e-12, True),
        "nabla_J": (1e-9, True),
        "R_antisym_XY": (1e-8, True),
        "R_antisym_ZV": (1e-8, True),
        "R_J_anti_invariant": (1e-8, True),
        "R_cyclic_sum": (1e-8, True),
        "R_J_invariant": (1e-8, False),
        "R_equals_cR0": (1e-7, True),
        "J_sectional_equals_c": (1e-6, True),
    }
    worst = dict.fromkeys(checks, 0.0)

    def upd(name, r):
        worst[name] = max(worst[name], float(r))

    for _ in range(samples):
        p = geo.Point2(*rng.uniform(-SAMPLE_RANGE, SAMPLE_RANGE, 2))
        u, v, X, Y, Z, V = rng.uniform(-1.0, 1.0, (6, 2))
        J = geo.J_at(p)
        Js = geo.Jstar_matrix(p)
        g = geo.metric_at(sf, p)
        upd("J_squared", np.max(np.abs(J @ J - eye)))
        upd("Jstar_squared", np.max(np.abs(Js @ Js - eye)))
        a, b = (J @ u) @ g @ v, u @ g @ (J @ v)
        upd("J_skew_symmetric", _scaled(a + b, a, b))
        o = u @ g @ (J @ u)
        upd("J_orthogonal", _scaled(o, u @ g @ u, (J @ u) @ g @ (J @ u)))
        upd("nabla_J", geo.nabla_J_norm(sf, p))
        Rt = geo.riemann_tensor(sf, p)

        def R(A, B, C, D):
            return float(np.einsum("ijkl,i,j,k,l->", Rt, A, B, C, D))

        r = R(X, Y, Z, V)
        upd("R_antisym_XY", _scaled(r + R(Y, X, Z, V), r))
        upd("R_antisym_ZV", _scaled(r + R(X, Y, V, Z), r))
        rj = R(J @ X, J @ Y, Z, V)
        upd("R_J_anti_invariant", _scaled(rj + r, r, rj))
        upd("R_J_invariant", _scaled(rj - r, r, rj))
        cyc = (r, R(Y, Z, X, V), R(Z, X, Y, V))
        upd("R_cyclic_sum", _scaled(sum(cyc), *cyc))
        upd("R_equals_cR0", geo.space_form_residual(sf, p) / max(1.0, float(np.max(np.abs(Rt)))))
        try:
            H = geo.j_sectional_curvature(sf, p, u)
        except DegeneratePlane:
            continue
        upd("J_sectional_equals_c", _scaled(H - c, c))
    return [(n, worst[n], tol, gate) for n, (tol, gate) in checks.items()]


def cmd_verify(args):
    if args.c == 0 or not math.isfinite(args.c):
        raise UsageError("--c must be finite and non-zero")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    results = verify_identities(args.c, args.samples, args.seed)
    rows = [(n, r, tol, "yes" if gate else "no", r <= tol) for n, r, tol, gate in results]
    failing = [n for n, r, tol, gate in results if gate and not r <= tol]
    status = {"status": "ok" if not failing else "failed"}
    if failing:
        status["first_failure"] = failing[0]
    params = {"c": args.c, "samples": args.samples, "seed": args.seed}
    _emit(args, render("verify", params, ("identity", "max_residual", "tolerance", "gating", "passed"),
                       rows, status, args.format))
    if failing:
        print(f"identity {failing[0]} failed", file=sys.stderr)
        return 1
    return 0


# -- curvature ---------------------------------------------------------------

def cmd_curvature(args):
    if args.c == 0 or not math.isfinite(args.c):
        raise UsageError("--c must be finite and non-zero")
    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    if not args.range > 0:
        raise UsageError("--range must be positive")
    sf = geo.SpaceForm(args.c)
    axis = np.linspace(-args.range, args.range, args.grid)
    tol = 1e-6 * max(1.0, abs(args.c))
    rows = []
    bad = 0
    for x in axis:
        for y in axis:
            p = geo.Point2(float(x), float(y))
            try:
                H = geo.j_sectional_curvature(sf, p, (1.0, 0.0))
                state = "ok" if abs(H - args.c) <= tol else "mismatch"
            except DegeneratePlane as exc:
                H = math.nan
                state = "isotropic" if type(exc).__name__ == "IsotropicVector" else "degenerate"
            bad += state != "ok"
            rows.append((p.x, p.y, H, state))
    status = {"status": "ok" if bad == 0 else "failed", "rows": len(rows), "bad": bad}
    params = {"c": args.c, "grid": args.grid, "range": args.range, "seed": args.seed}
    _emit(args, render("curvature", params, ("x", "y", "H", "state"), rows, status, args.format))
    return 0 if bad == 0 else 1


# -- flows ---------------------------------------------------------------------

def _flow_params(args):
    if not (args.T > 0 and math.isfinite(args.T)):
        raise UsageError("--T must be positive")
    if not (args.h > 0 and math.isfinite(args.h)):
        raise UsageError("--h must be positive")


def _abort_status(traj):
    st = {"status": traj.status}
    if not traj.completed:
        st["reason"] = (traj.reason or "").replace("\n", " ")
        st["t_fail"] = traj.t_fail
    return st


def cmd_lagrange(args):
    if args.c == 0 or not math.isfinite(args.c):
        raise UsageError("--c must be finite and non-zero")
    _flow_params(args)
    try:
        sys_ = LagrangianSystem(args.L, geo.SpaceForm(args.c))
    except ExprSyntaxError as exc:
        raise UsageError(f"--L: {exc}") from None
    columns = ("t", "x", "y", "xdot", "ydot", "E_L", "res1", "res2")
    params = {"c": args.c, "L": args.L, "p0": list(args.p0), "T": args.T, "h": args.h,
              "mode": args.mode}
    try:
        traj = el_flow(sys_, args.p0, args.T, args.h, mode=args.mode)
    except DegenerateLagrangian as exc:
        status = {"status": "aborted", "reason": f"DegenerateLagrangian: {exc}", "t_fail": 0.0}
        _emit(args, render("lagrange", params, columns, [], status, args.format))
        print(f"degenerate Lagrangian: {exc}", file=sys.stderr)
        return 1
    m = traj.monitors
    rows = [tuple(v) for v in zip(traj.t, traj.x, traj.y, *(m[c] for c in columns[3:]))]
    max_res = float(max(np.max(np.abs(m["res1"])), np.max(np.abs(m["res2"]))))
    status = _abort_status(traj)
    status["max_abs_residual"] = max_res
    ok = traj.completed and max_res <= args.res_tol
    _emit(args, render("lagrange", params, columns, rows, status, args.format))
    return 0 if ok else 1


def cmd_hamilton(args):
    _flow_params(args)
    if abs(args.p0[1]) <= AXIS_EPS:
        raise UsageError(f"--p0 lies on the axis singularity y=0 (|y| <= {AXIS_EPS:g}), "
                         "where cosh^2(2y) - 1 vanishes")
    try:
        sys_ = HamiltonianSystem(args.H)
    except ExprSyntaxError as exc:
        raise UsageError(f"--H: {exc}") from None
    columns = ("t", "x", "y", "H", "phi_paper", "phi_exterior")
    params = {"H": args.H, "p0": list(args.p0), "T": args.T, "h": args.h, "mode": args.mode}
    try:
        traj = hamilton_flow(sys_, args.p0, args.T, args.h, mode=args.mode)
    except AxisSingularity as exc:
        raise UsageError(str(exc)) from None
    m = traj.monitors
    rows = [tuple(v) for v in zip(traj.t, traj.x, traj.y, m["H"], m["phi_paper"], m["phi_exterior"])]
    dH = float(np.max(np.abs(m["H"] - m["H"][0])))
    status = _abort_status(traj)
    status["max_abs_dH"] = dH
    ok = traj.completed and dH <= args.tol
    _emit(args, render("hamilton", params, columns, rows, status, args.format))
    return 0 if ok else 1


# -- argument parsing ----------------------------------------------------------

def _pair(text):
    try:
        x, y = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise argparse.ArgumentTypeError("p0 must be finite")
    return (x, y)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH", default=None)
    common.add_argument("--seed", type=int, default=0)

    flow = argparse.ArgumentParser(add_help=False)
    flow.add_argument("--p0", type=_pair, required=True, metavar="X,Y",
                      help="start point; use --p0=-1,0.5 for a negative x")
    flow.add_argument("--T", type=float, default=1.0)
    flow.add_argument("--h", type=float, default=1e-3)
    flow.add_argument("--mode", choices=("fixed", "halving"), default="fixed")

    parser = argparse.ArgumentParser(prog="parakahler", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the structure identities")
    p.add_argument("--c", type=float, default=4.0)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("curvature", parents=[common], help="tabulate J-sectional curvature")
    p.add_argument("--c", type=float, default=4.0)
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--range", type=float, default=2.0)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("lagrange", parents=[common, flow], help="Euler-Lagrange flow")
    p.add_argument("--c", type=float, default=4.0)
    p.add_argument("--L", required=True, help="Lagrangian L(x, y)")
    p.add_argument("--res-tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_lagrange)

    p = sub.add_parser("hamilton", parents=[common, flow], help="para-Hamiltonian flow")
    p.add_argument("--H", required=True, help="Hamiltonian H(x, y)")
    p.add_argument("--tol", type=float, default=1e-8, help="allowed max |H(t) - H(0)|")
    p.set_defaults(func=cmd_hamilton)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
