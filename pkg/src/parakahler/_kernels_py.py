"""Pure-Python jet kernel: value, gradient and Hessian by second-order
forward-mode arithmetic over a compiled tape.

Mirrors :mod:`parakahler._kernels` operation for operation so that both
backends round identically.
"""
from math import cos, cosh, exp, isfinite, log, sin, sinh, sqrt, tanh

from ._tape import (
    ADD, CONST, COS, COSH, DIV, EXP, LN, MUL, NEG, POW, POWC, POWI, SIN, SINH,
    SQRT, SUB, TANH, VARX, VARY, TapeDomainError,
)

NAME = "python"


class Program:
    __slots__ = ("ops", "lhs", "rhs", "consts", "n")

    def __init__(self, ops, lhs, rhs, consts):
        self.ops = [int(o) for o in ops]
        self.lhs = [int(a) for a in lhs]
        self.rhs = [int(b) for b in rhs]
        self.consts = [float(c) for c in consts]
        self.n = len(self.ops)

    def jet(self, x, y):
        """Return ``(v, gx, gy, hxx, hxy, hyy)`` at ``(x, y)``."""
        x = float(x)
        y = float(y)
        V = [0.0] * self.n
        GX = [0.0] * self.n
        GY = [0.0] * self.n
        HXX = [0.0] * self.n
        HXY = [0.0] * self.n
        HYY = [0.0] * self.n
        ops, lhs, rhs, consts = self.ops, self.lhs, self.rhs, self.consts
        for i in range(self.n):
            op = ops[i]
            if op == CONST:
                V[i] = consts[i]
                continue
            if op == VARX:
                V[i] = x
                GX[i] = 1.0
                continue
            if op == VARY:
                V[i] = y
                GY[i] = 1.0
                continue
            a = lhs[i]
            av, agx, agy = V[a], GX[a], GY[a]
            if op == NEG:
                V[i] = -av
                GX[i] = -agx
                GY[i] = -agy
                HXX[i] = -HXX[a]
                HXY[i] = -HXY[a]
                HYY[i] = -HYY[a]
                continue
            if op <= DIV or op == POW:
                b = rhs[i]
                bv, bgx, bgy = V[b], GX[b], GY[b]
                if op == ADD:
                    V[i] = av + bv
                    GX[i] = agx + bgx
                    GY[i] = agy + bgy
                    HXX[i] = HXX[a] + HXX[b]
                    HXY[i] = HXY[a] + HXY[b]
                    HYY[i] = HYY[a] + HYY[b]
                elif op == SUB:
                    V[i] = av - bv
                    GX[i] = agx - bgx
                    GY[i] = agy - bgy
                    HXX[i] = HXX[a] - HXX[b]
                    HXY[i] = HXY[a] - HXY[b]
                    HYY[i] = HYY[a] - HYY[b]
                elif op == MUL:
                    V[i] = av * bv
                    GX[i] = agx * bv + av * bgx
                    GY[i] = agy * bv + av * bgy
                    HXX[i] = HXX[a] * bv + 2.0 * agx * bgx + av * HXX[b]
                    HXY[i] = HXY[a] * bv + agx * bgy + agy * bgx + av * HXY[b]
                    HYY[i] = HYY[a] * bv + 2.0 * agy * bgy + av * HYY[b]
                elif op == DIV:
                    if bv == 0.0:
                        raise TapeDomainError(i, "division by zero")
                    q = av / bv
                    qx = (agx - q * bgx) / bv
                    qy = (agy - q * bgy) / bv
                    V[i] = q
                    GX[i] = qx
                    GY[i] = qy
                    HXX[i] = (HXX[a] - 2.0 * qx * bgx - q * HXX[b]) / bv
                    HXY[i] = (HXY[a] - qx * bgy - qy * bgx - q * HXY[b]) / bv
                    HYY[i] = (HYY[a] - 2.0 * qy * bgy - q * HYY[b]) / bv
                else:
                    # a^b = exp(b ln a), a > 0
                    if av <= 0.0:
                        raise TapeDomainError(i, "non-integer power of non-positive base")
                    bhxx, bhxy, bhyy = HXX[b], HXY[b], HYY[b]
                    la = log(av)
                    lx = agx / av
                    ly = agy / av
                    lxx = HXX[a] / av - lx * lx
                    lxy = HXY[a] / av - lx * ly
                    lyy = HYY[a] / av - ly * ly
                    # w = b * ln a
                    wx = bgx * la + bv * lx
                    wy = bgy * la + bv * ly
                    wxx = bhxx * la + 2.0 * bgx * lx + bv * lxx
                    wxy = bhxy * la + bgx * ly + bgy * lx + bv * lxy
                    wyy = bhyy * la + 2.0 * bgy * ly + bv * lyy
                    try:
                        f = exp(bv * la)
                    except OverflowError:
                        raise TapeDomainError(i, "overflow") from None
                    V[i] = f
                    GX[i] = f * wx
                    GY[i] = f * wy
                    HXX[i] = f * (wxx + wx * wx)
                    HXY[i] = f * (wxy + wx * wy)
                    HYY[i] = f * (wyy + wy * wy)
                continue
            # unary chain rule: f(u) with f' = d1, f'' = d2
            try:
                if op == POWI:
                    n = consts[i]
                    if n == 0.0:
                        f, d1, d2 = 1.0, 0.0, 0.0
                    elif n == 1.0:
                        f, d1, d2 = av, 1.0, 0.0
                    else:
                        if av == 0.0 and n < 0.0:
                            raise TapeDomainError(i, "zero to a negative power")
                        f = av ** n
                        d1 = n * av ** (n - 1.0)
                        d2 = n * (n - 1.0) * av ** (n - 2.0)
                elif op == POWC:
                    n = consts[i]
                    if av <= 0.0:
                        raise TapeDomainError(i, "non-integer power of non-positive base")
                    f = av ** n
                    d1 = n * av ** (n - 1.0)
                    d2 = n * (n - 1.0) * av ** (n - 2.0)
                elif op == SIN:
                    f = sin(av)
                    d1 = cos(av)
                    d2 = -f
                elif op == COS:
                    f = cos(av)
                    d1 = -sin(av)
                    d2 = -f
                elif op == SINH:
                    f = sinh(av)
                    d1 = cosh(av)
                    d2 = f
                elif op == COSH:
                    f = cosh(av)
                    d1 = sinh(av)
                    d2 = f
                elif op == TANH:
                    f = tanh(av)
                    d1 = 1.0 - f * f
                    d2 = -2.0 * f * d1
                elif op == EXP:
                    f = exp(av)
                    d1 = f
                    d2 = f
                elif op == LN:
                    if av <= 0.0:
                        raise TapeDomainError(i, "ln of non-positive value")
                    f = log(av)
                    d1 = 1.0 / av
                    d2 = -d1 * d1
                else:  # SQRT
                    if av <= 0.0:
                        raise TapeDomainError(i, "sqrt not differentiable at non-positive value")
                    f = sqrt(av)
                    d1 = 0.5 / f
                    d2 = -0.5 * d1 / av
            except OverflowError:
                raise TapeDomainError(i, "overflow") from None
            if not (isfinite(f) and isfinite(d1) and isfinite(d2)):
                raise TapeDomainError(i, "overflow")
            V[i] = f
            GX[i] = d1 * agx
            GY[i] = d1 * agy
            HXX[i] = d1 * HXX[a] + d2 * agx * agx
            HXY[i] = d1 * HXY[a] + d2 * agx * agy
            HYY[i] = d1 * HYY[a] + d2 * agy * agy
        k = self.n - 1
        out = (V[k], GX[k], GY[k], HXX[k], HXY[k], HYY[k])
        for v in out:
            if not isfinite(v):
                raise TapeDomainError(k, "non-finite result")
        return out
