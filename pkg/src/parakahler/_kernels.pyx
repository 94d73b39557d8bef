# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled jet kernel. Same arithmetic, in the same order, as _kernels_py."""
from libc.math cimport cos, cosh, exp, isfinite, log, pow, sin, sinh, sqrt, tanh
from libc.stdlib cimport free, malloc

from ._tape import TapeDomainError

NAME = "cython"

cdef enum:
    CONST = 0
    VARX = 1
    VARY = 2
    NEG = 3
    ADD = 4
    SUB = 5
    MUL = 6
    DIV = 7
    POWI = 8
    POWC = 9
    POW = 10
    SIN = 11
    COS = 12
    SINH = 13
    COSH = 14
    TANH = 15
    EXP = 16
    LN = 17
    SQRT = 18

# error codes returned by _run
cdef enum:
    OK = 0
    E_DIV0 = 1
    E_POWBASE = 2
    E_ZERO_NEG = 3
    E_LN = 4
    E_SQRT = 5
    E_OVERFLOW = 6
    E_NONFINITE = 7

_REASONS = {
    E_DIV0: "division by zero",
    E_POWBASE: "non-integer power of non-positive base",
    E_ZERO_NEG: "zero to a negative power",
    E_LN: "ln of non-positive value",
    E_SQRT: "sqrt not differentiable at non-positive value",
    E_OVERFLOW: "overflow",
    E_NONFINITE: "non-finite result",
}


cdef class Program:
    cdef int n
    cdef int *ops
    cdef int *lhs
    cdef int *rhs
    cdef double *consts

    def __cinit__(self, ops, lhs, rhs, consts):
        cdef int i
        self.n = len(ops)
        self.ops = <int *> malloc(self.n * sizeof(int))
        self.lhs = <int *> malloc(self.n * sizeof(int))
        self.rhs = <int *> malloc(self.n * sizeof(int))
        self.consts = <double *> malloc(self.n * sizeof(double))
        if not (self.ops and self.lhs and self.rhs and self.consts):
            raise MemoryError()
        for i in range(self.n):
            self.ops[i] = ops[i]
            self.lhs[i] = lhs[i]
            self.rhs[i] = rhs[i]
            self.consts[i] = consts[i]

    def __dealloc__(self):
        free(self.ops)
        free(self.lhs)
        free(self.rhs)
        free(self.consts)

    cdef int _run(self, double x, double y, double *w, int *where) noexcept nogil:
        cdef int i, op, a, b
        cdef double av, agx, agy, bv, bgx, bgy, q, qx, qy, n, f, d1, d2
        cdef double la, lx, ly, lxx, lxy, lyy, wx, wy, wxx, wxy, wyy
        cdef double *s
        cdef double *sa
        cdef double *sb
        for i in range(self.n):
            op = self.ops[i]
            s = w + 6 * i
            s[0] = 0.0; s[1] = 0.0; s[2] = 0.0; s[3] = 0.0; s[4] = 0.0; s[5] = 0.0
            where[0] = i
            if op == CONST:
                s[0] = self.consts[i]
                continue
            if op == VARX:
                s[0] = x
                s[1] = 1.0
                continue
            if op == VARY:
                s[0] = y
                s[2] = 1.0
                continue
            a = self.lhs[i]
            sa = w + 6 * a
            av = sa[0]; agx = sa[1]; agy = sa[2]
            if op == NEG:
                s[0] = -av; s[1] = -agx; s[2] = -agy
                s[3] = -sa[3]; s[4] = -sa[4]; s[5] = -sa[5]
                continue
            if op <= DIV or op == POW:
                b = self.rhs[i]
                sb = w + 6 * b
                bv = sb[0]; bgx = sb[1]; bgy = sb[2]
                if op == ADD:
                    s[0] = av + bv; s[1] = agx + bgx; s[2] = agy + bgy
                    s[3] = sa[3] + sb[3]; s[4] = sa[4] + sb[4]; s[5] = sa[5] + sb[5]
                elif op == SUB:
                    s[0] = av - bv; s[1] = agx - bgx; s[2] = agy - bgy
                    s[3] = sa[3] - sb[3]; s[4] = sa[4] - sb[4]; s[5] = sa[5] - sb[5]
                elif op == MUL:
                    s[0] = av * bv
                    s[1] = agx * bv + av * bgx
                    s[2] = agy * bv + av * bgy
                    s[3] = sa[3] * bv + 2.0 * agx * bgx + av * sb[3]
                    s[4] = sa[4] * bv + agx * bgy + agy * bgx + av * sb[4]
                    s[5] = sa[5] * bv + 2.0 * agy * bgy + av * sb[5]
                elif op == DIV:
                    if bv == 0.0:
                        return E_DIV0
                    q = av / bv
                    qx = (agx - q * bgx) / bv
                    qy = (agy - q * bgy) / bv
                    s[0] = q; s[1] = qx; s[2] = qy
                    s[3] = (sa[3] - 2.0 * qx * bgx - q * sb[3]) / bv
                    s[4] = (sa[4] - qx * bgy - qy * bgx - q * sb[4]) / bv
                    s[5] = (sa[5] - 2.0 * qy * bgy - q * sb[5]) / bv
                else:
                    if av <= 0.0:
                        return E_POWBASE
                    la = log(av)
                    lx = agx / av
                    ly = agy / av
                    lxx = sa[3] / av - lx * lx
                    lxy = sa[4] / av - lx * ly
                    lyy = sa[5] / av - ly * ly
                    wx = bgx * la + bv * lx
                    wy = bgy * la + bv * ly
                    wxx = sb[3] * la + 2.0 * bgx * lx + bv * lxx
                    wxy = sb[4] * la + bgx * ly + bgy * lx + bv * lxy
                    wyy = sb[5] * la + 2.0 * bgy * ly + bv * lyy
                    f = exp(bv * la)
                    if not isfinite(f):
                        return E_OVERFLOW
                    s[0] = f
                    s[1] = f * wx
                    s[2] = f * wy
                    s[3] = f * (wxx + wx * wx)
                    s[4] = f * (wxy + wx * wy)
                    s[5] = f * (wyy + wy * wy)
                continue
            if op == POWI:
                n = self.consts[i]
                if n == 0.0:
                    f = 1.0; d1 = 0.0; d2 = 0.0
                elif n == 1.0:
                    f = av; d1 = 1.0; d2 = 0.0
                else:
                    if av == 0.0 and n < 0.0:
                        return E_ZERO_NEG
                    f = pow(av, n)
                    d1 = n * pow(av, n - 1.0)
                    d2 = n * (n - 1.0) * pow(av, n - 2.0)
            elif op == POWC:
                n = self.consts[i]
                if av <= 0.0:
                    return E_POWBASE
                f = pow(av, n)
                d1 = n * pow(av, n - 1.0)
                d2 = n * (n - 1.0) * pow(av, n - 2.0)
            elif op == SIN:
                f = sin(av); d1 = cos(av); d2 = -f
            elif op == COS:
                f = cos(av); d1 = -sin(av); d2 = -f
            elif op == SINH:
                f = sinh(av); d1 = cosh(av); d2 = f
            elif op == COSH:
                f = cosh(av); d1 = sinh(av); d2 = f
            elif op == TANH:
                f = tanh(av); d1 = 1.0 - f * f; d2 = -2.0 * f * d1
            elif op == EXP:
                f = exp(av); d1 = f; d2 = f
            elif op == LN:
                if av <= 0.0:
                    return E_LN
                f = log(av); d1 = 1.0 / av; d2 = -d1 * d1
            else:
                if av <= 0.0:
                    return E_SQRT
                f = sqrt(av); d1 = 0.5 / f; d2 = -0.5 * d1 / av
            if not isfinite(f) or not isfinite(d1) or not isfinite(d2):
                return E_OVERFLOW
            s[0] = f
            s[1] = d1 * agx
            s[2] = d1 * agy
            s[3] = d1 * sa[3] + d2 * agx * agx
            s[4] = d1 * sa[4] + d2 * agx * agy
            s[5] = d1 * sa[5] + d2 * agy * agy
        s = w + 6 * (self.n - 1)
        where[0] = self.n - 1
        for i in range(6):
            if not isfinite(s[i]):
                return E_NONFINITE
        return OK

    cpdef tuple jet(self, double x, double y):
        """Return ``(v, gx, gy, hxx, hxy, hyy)`` at ``(x, y)``."""
        cdef double *w = <double *> malloc(6 * self.n * sizeof(double))
        cdef int where = 0
        cdef int code
        cdef double *s
        if not w:
            raise MemoryError()
        try:
            with nogil:
                code = self._run(x, y, w, &where)
            if code != OK:
                raise TapeDomainError(where, _REASONS[code])
            s = w + 6 * (self.n - 1)
            return (s[0], s[1], s[2], s[3], s[4], s[5])
        finally:
            free(w)
