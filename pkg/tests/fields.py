"""Seeded random expression trees for property tests."""
import math

import numpy as np

from parakahler.calculus import Binary, Const, Unary, Var, eval_expr, jet_eval
from parakahler.errors import EvalDomainError

SMOOTH_UNARY = ("sin", "cos", "tanh", "sinh", "cosh", "exp", "neg")


def random_tree(rng, depth, unary=SMOOTH_UNARY, binary=("add", "sub", "mul"), pow_ok=True):
    if depth <= 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.35:
            return Var("x")
        if r < 0.7:
            return Var("y")
        return Const(float(np.round(rng.uniform(-2, 2), 3)))
    r = rng.random()
    if r < 0.35:
        op = unary[rng.integers(len(unary))]
        return Unary(op, random_tree(rng, depth - 1, unary, binary, pow_ok))
    if pow_ok and r < 0.45:
        base = random_tree(rng, depth - 1, unary, binary, pow_ok)
        return Binary("pow", base, Const(float(rng.integers(2, 4))))
    op = binary[rng.integers(len(binary))]
    return Binary(op, random_tree(rng, depth - 1, unary, binary, pow_ok),
                  random_tree(rng, depth - 1, unary, binary, pow_ok))


def smooth_fields(seed, count, depth=4, bound=5.0, box=2.0):
    """``count`` (field, point) pairs whose value and derivatives are
    modest at the point, so finite differences are well conditioned."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        e = random_tree(rng, depth)
        p = tuple(rng.uniform(-box, box, 2))
        try:
            j = jet_eval(e, p)
        except EvalDomainError:
            continue
        mags = (j.value, j.gx, j.gy, j.hxx, j.hxy, j.hyy)
        if max(abs(m) for m in mags) > bound or not all(math.isfinite(m) for m in mags):
            continue
        try:
            big = max(abs(eval_expr(e, (p[0] + a, p[1] + b)))
                      for a in (-0.01, 0.01) for b in (-0.01, 0.01))
        except EvalDomainError:
            continue
        if big > 2 * bound:
            continue
        out.append((e, p))
    return out
