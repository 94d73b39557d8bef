"""The para-Kahler space form (R^2, g, J) of constant paraholomorphic
sectional curvature c.

    g  = (4/c) (cosh^2(2y) dx(x)dx - dy(x)dy)
    J dx-direction:  d/dx -> -cosh(2y) d/dy,   d/dy -> -(1/cosh 2y) d/dx

Curvature uses the lowering ``R(X, Y, Z, V) = -g(R_std(X, Y)Z, V)`` where
``R_std(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y]``; with it the sectional
curvature is ``R(u, v, u, v) / (g(u,u) g(v,v) - g(u,v)^2)`` and the model
satisfies ``R = c R0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BasePointMismatch, DegeneratePlane, IsotropicVector

PLANE_EPS = 1e-10


@dataclass(frozen=True)
class SpaceForm:
    c: float

    def __post_init__(self):
        if not math.isfinite(self.c) or self.c == 0:
            raise ValueError("the curvature constant c must be finite and non-zero")

    @property
    def scale(self):
        return 4.0 / self.c


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("point coordinates must be finite")

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class TangentVec:
    base: Point2
    u1: float
    u2: float

    @property
    def components(self):
        return np.array([self.u1, self.u2])


@dataclass(frozen=True)
class Cotangent:
    base: Point2
    a1: float
    a2: float

    @property
    def components(self):
        return np.array([self.a1, self.a2])


def as_point(p) -> Point2:
    return p if isinstance(p, Point2) else Point2(float(p[0]), float(p[1]))


def _vec(v, p: Point2):
    """Components of ``v`` at ``p``; bare pairs are taken as based at ``p``."""
    if isinstance(v, (TangentVec, Cotangent)):
        if v.base != p:
            raise BasePointMismatch(f"vector based at {v.base}, expected {p}")
        return v.components
    return np.asarray(v, dtype=float)


# -- pointwise structure -----------------------------------------------------

def metric_at(sf: SpaceForm, p) -> np.ndarray:
    p = as_point(p)
    ch = math.cosh(2 * p.y)
    k = sf.scale
    return np.array([[k * ch * ch, 0.0], [0.0, -k]])


def g_apply(sf: SpaceForm, u, v, p=None) -> float:
    """``g(u, v)``; ``p`` defaults to the base point of ``u``."""
    if p is None:
        if not isinstance(u, TangentVec):
            raise TypeError("base point required for bare components")
        p = u.base
    p = as_point(p)
    a, b = _vec(u, p), _vec(v, p)
    return float(a @ metric_at(sf, p) @ b)


def J_at(p) -> np.ndarray:
    """Matrix of J acting on tangent components (column j is J of basis j)."""
    ch = math.cosh(2 * as_point(p).y)
    return np.array([[0.0, -1.0 / ch], [-ch, 0.0]])


def J_apply(p, u) -> np.ndarray:
    p = as_point(p)
    return J_at(p) @ _vec(u, p)


def Jstar_matrix(p) -> np.ndarray:
    """Matrix of J* on (dx, dy) components: dx -> -cosh(2y) dy,
    dy -> -(1/cosh 2y) dx."""
    ch = math.cosh(2 * as_point(p).y)
    return np.array([[0.0, -1.0 / ch], [-ch, 0.0]])


def Jstar_apply(p, a) -> Cotangent:
    p = as_point(p)
    out = Jstar_matrix(p) @ _vec(a, p)
    return Cotangent(p, float(out[0]), float(out[1]))


# -- connection --------------------------------------------------------------

def _metric_jet(sf, y):
    """g_ij, d_m g_ij and d_m d_n g_ij as (2,2), (2,2,2), (2,2,2,2) arrays.

    Derivative index first: ``dg[m, i, j] = d_m g_ij``.
    """
    k = sf.scale
    ch = math.cosh(2 * y)
    g = np.array([[k * ch * ch, 0.0], [0.0, -k]])
    dg = np.zeros((2, 2, 2))
    ddg = np.zeros((2, 2, 2, 2))
    dg[1, 0, 0] = 2.0 * k * math.sinh(4 * y)
    ddg[1, 1, 0, 0] = 8.0 * k * math.cosh(4 * y)
    return g, dg, ddg


def _connection(sf, p):
    """Christoffel symbols ``G[k, i, j]`` and their derivatives
    ``dG[m, k, i, j] = d_m G^k_ij`` from the Koszul formula."""
    g, dg, ddg = _metric_jet(sf, p.y)
    ginv = np.linalg.inv(g)
    # S[l, i, j] = d_i g_lj + d_j g_li - d_l g_ij
    S = np.einsum("ilj->lij", dg) + np.einsum("jli->lij", dg) - dg
    dS = (np.einsum("milj->mlij", ddg) + np.einsum("mjli->mlij", ddg)
          - ddg)
    G = 0.5 * np.einsum("kl,lij->kij", ginv, S)
    dginv = -np.einsum("ka,mab,bl->mkl", ginv, dg, ginv)
    dG = 0.5 * (np.einsum("mkl,lij->mkij", dginv, S)
                + np.einsum("kl,mlij->mkij", ginv, dS))
    return g, G, dG


def christoffel_at(sf: SpaceForm, p) -> np.ndarray:
    """``G[k, i, j] = Gamma^k_ij`` (symmetric in i, j)."""
    return _connection(sf, as_point(p))[1]


def _dJ(y):
    """``dJ[i, k, j] = d_i J^k_j``."""
    ch = math.cosh(2 * y)
    sh = math.sinh(2 * y)
    dJ = np.zeros((2, 2, 2))
    dJ[1, 0, 1] = 2.0 * sh / (ch * ch)
    dJ[1, 1, 0] = -2.0 * sh
    return dJ


def nabla_J(sf: SpaceForm, p) -> np.ndarray:
    """``N[i, k, j] = (nabla_i J)^k_j``."""
    p = as_point(p)
    G = christoffel_at(sf, p)
    J = J_at(p)
    return (_dJ(p.y) + np.einsum("kim,mj->ikj", G, J)
            - np.einsum("mij,km->ikj", G, J))


def nabla_J_norm(sf: SpaceForm, p) -> float:
    return float(np.max(np.abs(nabla_J(sf, p))))


# -- curvature ---------------------------------------------------------------

def riemann_tensor(sf: SpaceForm, p) -> np.ndarray:
    """All components ``R[i, j, k, l] = R(d_i, d_j, d_k, d_l)``."""
    g, G, dG = _connection(sf, as_point(p))
    # standard R^l_{kij}: R_std(d_i, d_j) d_k = R1[l, k, i, j] d_l
    R1 = (np.einsum("iljk->lkij", dG) - np.einsum("jlik->lkij", dG)
          + np.einsum("lim,mjk->lkij", G, G) - np.einsum("ljm,mik->lkij", G, G))
    R_std = np.einsum("mkij,ml->ijkl", R1, g)
    return -R_std


def riemann_0_4(sf: SpaceForm, p, X, Y, Z, V) -> float:
    p = as_point(p)
    return float(np.einsum("ijkl,i,j,k,l->", riemann_tensor(sf, p),
                           _vec(X, p), _vec(Y, p), _vec(Z, p), _vec(V, p)))


def r0_tensor(sf: SpaceForm, p) -> np.ndarray:
    """Components of R0 on the coordinate frame."""
    p = as_point(p)
    g = metric_at(sf, p)
    gJ = g @ J_at(p)  # gJ[a, b] = g(d_a, J d_b)
    return 0.25 * (np.einsum("ik,jl->ijkl", g, g) - np.einsum("il,jk->ijkl", g, g)
                   - np.einsum("ik,jl->ijkl", gJ, gJ) + np.einsum("il,jk->ijkl", gJ, gJ)
                   - 2.0 * np.einsum("ij,kl->ijkl", gJ, gJ))


def r0_at(sf: SpaceForm, p, X, Y, Z, V) -> float:
    """R0(X,Y,Z,V) = 1/4 [g(X,Z)g(Y,V) - g(X,V)g(Y,Z) - g(X,JZ)g(Y,JV)
    + g(X,JV)g(Y,JZ) - 2 g(X,JY)g(Z,JV)]."""
    p = as_point(p)
    X, Y, Z, V = (_vec(w, p) for w in (X, Y, Z, V))
    g = metric_at(sf, p)
    J = J_at(p)

    def gg(a, b):
        return float(a @ g @ b)

    return 0.25 * (gg(X, Z) * gg(Y, V) - gg(X, V) * gg(Y, Z)
                   - gg(X, J @ Z) * gg(Y, J @ V) + gg(X, J @ V) * gg(Y, J @ Z)
                   - 2.0 * gg(X, J @ Y) * gg(Z, J @ V))


def _plane_denominator(sf, p, u, v):
    g = metric_at(sf, p)
    guu, gvv, guv = u @ g @ u, v @ g @ v, u @ g @ v
    den = guu * gvv - guv * guv
    scale = max(abs(guu * gvv), guv * guv)
    return float(den), float(scale)


def sectional_curvature(sf: SpaceForm, p, u, v) -> float:
    p = as_point(p)
    a, b = _vec(u, p), _vec(v, p)
    den, scale = _plane_denominator(sf, p, a, b)
    if abs(den) <= PLANE_EPS * scale or den == 0.0:
        raise DegeneratePlane(f"plane span{{{a}, {b}}} is degenerate at {p}")
    return riemann_0_4(sf, p, a, b, a, b) / den


def j_sectional_curvature(sf: SpaceForm, p, u) -> float:
    p = as_point(p)
    a = _vec(u, p)
    g = metric_at(sf, p)
    guu = float(a @ g @ a)
    if abs(guu) <= PLANE_EPS * float(np.abs(a) @ np.abs(g) @ np.abs(a)):
        raise IsotropicVector(f"{a} is isotropic at {p}")
    return sectional_curvature(sf, p, a, J_at(p) @ a)


def space_form_residual(sf: SpaceForm, p) -> float:
    """max over the coordinate frame of |R - c R0|."""
    p = as_point(p)
    return float(np.max(np.abs(riemann_tensor(sf, p) - sf.c * r0_tensor(sf, p))))
