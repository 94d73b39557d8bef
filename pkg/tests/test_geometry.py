import math

import numpy as np
import pytest

from parakahler.errors import BasePointMismatch, DegeneratePlane, IsotropicVector
from parakahler.geometry import (
    Cotangent, Point2, SpaceForm, TangentVec, J_apply, J_at, Jstar_apply, Jstar_matrix,
    christoffel_at, g_apply, j_sectional_curvature, metric_at, nabla_J, nabla_J_norm,
    r0_at, riemann_0_4, riemann_tensor, sectional_curvature, space_form_residual,
)

from .oracles import fd_christoffel, fd_riemann_std

SF4 = SpaceForm(4.0)
DX, DY = (1.0, 0.0), (0.0, 1.0)


def points(rng, n):
    return rng.uniform(-2, 2, size=(n, 2))


def test_space_form_rejects_zero_and_nan():
    for bad in (0.0, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            SpaceForm(bad)


def test_point_rejects_nonfinite():
    with pytest.raises(ValueError):
        Point2(0.0, float("nan"))


@pytest.mark.parametrize("p", [(0, 0), (7, 0)])
def test_metric_at_origin_line(p):
    assert np.array_equal(metric_at(SF4, p), [[1, 0], [0, -1]])


def test_metric_c2():
    g = metric_at(SpaceForm(2.0), (0, 0.5))
    assert g[0, 0] == pytest.approx(2 * math.cosh(1) ** 2, rel=1e-15)
    assert g[0, 0] == pytest.approx(4.76220, abs=1e-5)
    assert g[1, 1] == -2 and g[0, 1] == g[1, 0] == 0


def test_g_apply_examples():
    p = Point2(0.0, 0.0)
    assert g_apply(SF4, TangentVec(p, 1, 0), TangentVec(p, 1, 0)) == 1
    assert g_apply(SF4, TangentVec(p, 1, 0), TangentVec(p, 0, 1)) == 0
    assert g_apply(SF4, TangentVec(p, 1, 1), TangentVec(p, 1, 1)) == 0


def test_g_apply_base_mismatch():
    with pytest.raises(BasePointMismatch):
        g_apply(SF4, TangentVec(Point2(0, 0), 1, 0), TangentVec(Point2(0, 1), 1, 0))


def test_j_examples():
    assert np.array_equal(J_at((0, 0)), [[0, -1], [-1, 0]])
    assert J_apply((0, 0.5), DX)[1] == pytest.approx(-math.cosh(1), rel=1e-15)
    assert J_apply((0, 0.5), DX)[1] == pytest.approx(-1.54308, abs=1e-5)
    J = J_at((0.3, -1.2))
    assert np.max(np.abs(J @ J - np.eye(2))) <= 1e-14


def test_jstar_examples(rng):
    out = Jstar_apply((0, 0), Cotangent(Point2(0, 0), 1, 0))
    assert (out.a1, out.a2) == (0, -1)
    for x, y in points(rng, 50):
        p = Point2(x, y)
        a = Cotangent(p, *rng.normal(size=2))
        b = Jstar_apply(p, Jstar_apply(p, a))
        assert np.max(np.abs(b.components - a.components)) <= 1e-14


def test_jstar_base_mismatch():
    with pytest.raises(BasePointMismatch):
        Jstar_apply((0, 0), Cotangent(Point2(1, 0), 1, 0))


def test_jstar_duality_gap_is_documented(rng):
    # (J*a)(u) - a(Ju) with J* taken as written equals (ch - 1/ch)(a2 u1 - a1 u2);
    # it vanishes only on y = 0
    for x, y in points(rng, 100):
        a, u = rng.normal(size=2), rng.normal(size=2)
        ch = math.cosh(2 * y)
        gap = (Jstar_matrix((x, y)) @ a) @ u - a @ (J_at((x, y)) @ u)
        assert gap == pytest.approx((ch - 1 / ch) * (a[1] * u[0] - a[0] * u[1]),
                                    rel=1e-12, abs=1e-12)
    a, u = rng.normal(size=2), rng.normal(size=2)
    assert abs((Jstar_matrix((0.4, 0)) @ a) @ u - a @ (J_at((0.4, 0)) @ u)) <= 1e-15
    p = (0.2, 0.9)
    assert np.max(np.abs(Jstar_matrix(p) - J_at(p).T)) > 1.0


def test_structure_identities(rng):
    for c in (1.0, -2.0, 4.0):
        sf = SpaceForm(c)
        for x, y in points(rng, 200):
            u, v = rng.normal(size=2), rng.normal(size=2)
            J, g = J_at((x, y)), metric_at(sf, (x, y))
            scale = max(1.0, float(np.abs(u) @ np.abs(g) @ np.abs(v)) * math.cosh(2 * y))
            assert abs((J @ u) @ g @ v + u @ g @ (J @ v)) <= 1e-12 * scale
            assert abs(u @ g @ (J @ u)) <= 1e-12 * scale


def test_christoffel_vanish_on_axis():
    assert np.array_equal(christoffel_at(SF4, (3.0, 0.0)), np.zeros((2, 2, 2)))


def test_christoffel_examples():
    G = christoffel_at(SF4, (0, 0.5))
    assert G[0, 0, 1] == G[0, 1, 0] == pytest.approx(2 * math.tanh(1), rel=1e-14)
    assert G[0, 0, 1] == pytest.approx(1.52318, abs=1e-5)
    assert G[1, 0, 0] == pytest.approx(math.sinh(2), rel=1e-14)
    assert G[1, 0, 0] == pytest.approx(3.62686, abs=1e-5)


@pytest.mark.parametrize("c", [1.0, -3.0, 4.0])
def test_christoffel_closed_forms_and_oracle(c, rng):
    sf = SpaceForm(c)
    for x, y in points(rng, 30):
        G = christoffel_at(sf, (x, y))
        expected = np.zeros((2, 2, 2))
        expected[0, 0, 1] = expected[0, 1, 0] = 2 * math.tanh(2 * y)
        expected[1, 0, 0] = 2 * math.cosh(2 * y) * math.sinh(2 * y)
        assert np.max(np.abs(G - expected)) <= 1e-9 * max(1, abs(expected[1, 0, 0]))
        fd = fd_christoffel(sf, x, y)
        assert np.max(np.abs(G - fd)) <= 1e-6 * max(1, abs(expected[1, 0, 0]))


def test_nabla_j_examples(rng):
    assert nabla_J_norm(SF4, (0, 0)) <= 1e-12
    assert nabla_J_norm(SF4, (1.7, -0.8)) <= 1e-9
    assert max(nabla_J_norm(SF4, p) for p in points(rng, 100)) <= 1e-9


def test_nabla_j_against_fd_derivative(rng):
    h = 1e-6
    for x, y in points(rng, 20):
        dJ = (J_at((x, y + h)) - J_at((x, y - h))) / (2 * h)
        G = christoffel_at(SF4, (x, y))
        J = J_at((x, y))
        N = np.einsum("kim,mj->ikj", G, J) - np.einsum("mij,km->ikj", G, J)
        N[1] += dJ
        assert np.max(np.abs(N)) <= 1e-6 * max(1, math.cosh(2 * y) ** 2)
        assert np.max(np.abs(N - nabla_J(SF4, (x, y)))) <= 1e-6 * math.cosh(2 * y) ** 2


def test_riemann_examples():
    assert riemann_0_4(SF4, (0, 0), DX, DY, DX, DY) == pytest.approx(-4, abs=1e-12)
    assert riemann_0_4(SF4, (0, 0), DX, DX, DY, DX) == 0
    assert r0_at(SF4, (0, 0), DX, DY, DX, DY) == pytest.approx(-1, abs=1e-15)


@pytest.mark.parametrize("c", [4.0, -2.0])
def test_riemann_matches_fd_oracle(c, rng):
    sf = SpaceForm(c)
    for x, y in rng.uniform(-1, 1, size=(5, 2)):
        R = riemann_tensor(sf, (x, y))
        fd = -fd_riemann_std(sf, x, y)
        assert np.max(np.abs(R - fd)) <= 1e-4 * max(1.0, np.max(np.abs(R)))


def test_riemann_and_r0_vanish_when_x_equals_y(rng):
    p = Point2(0.3, -0.4)
    X, Z, V = (rng.normal(size=2) for _ in range(3))
    assert riemann_0_4(SF4, p, X, X, Z, V) == pytest.approx(0, abs=1e-12)
    assert r0_at(SF4, p, X, X, Z, V) == pytest.approx(0, abs=1e-12)


def test_r0_quadrilinear(rng):
    p = (0.1, 0.6)
    X, Y, Z, V = (rng.normal(size=2) for _ in range(4))
    assert r0_at(SF4, p, 2 * X, 2 * Y, 2 * Z, 2 * V) == pytest.approx(
        16 * r0_at(SF4, p, X, Y, Z, V), rel=1e-13)


def test_vectors_must_share_base_point():
    p, q = Point2(0, 0), Point2(0, 1)
    with pytest.raises(BasePointMismatch):
        riemann_0_4(SF4, p, TangentVec(q, 1, 0), DY, DX, DY)
    with pytest.raises(BasePointMismatch):
        r0_at(SF4, p, DX, TangentVec(q, 0, 1), DX, DY)


def test_curvature_symmetries(rng):
    for c in (1.0, -3.0):
        sf = SpaceForm(c)
        for x, y in points(rng, 50):
            p = (x, y)
            X, Y, Z, V = (rng.normal(size=2) for _ in range(4))
            J = J_at(p)
            R = lambda a, b, d, e: riemann_0_4(sf, p, a, b, d, e)  # noqa: E731
            base = R(X, Y, Z, V)
            scale = max(1.0, abs(base), abs(R(Y, Z, X, V)), abs(R(Z, X, Y, V)))
            assert abs(base + R(Y, X, Z, V)) <= 1e-8 * scale
            assert abs(base + R(X, Y, V, Z)) <= 1e-8 * scale
            assert abs(base - R(Z, V, X, Y)) <= 1e-8 * scale
            assert abs(base + R(Y, Z, X, V) + R(Z, X, Y, V) - 0) <= 1e-8 * scale
            # J reverses g on the model, so R is J-anti-invariant in its first pair
            assert abs(R(J @ X, J @ Y, Z, V) + base) <= 1e-8 * scale


def test_sectional_examples():
    assert sectional_curvature(SF4, (0, 0), DX, DY) == pytest.approx(4, abs=1e-12)
    u = (1.0, 1.0)
    k = sectional_curvature(SF4, (0, 0), u, DY)
    assert math.isfinite(k)
    assert k == pytest.approx(-riemann_0_4(SF4, (0, 0), u, DY, u, DY), abs=1e-12)
    with pytest.raises(DegeneratePlane):
        sectional_curvature(SF4, (0, 0), DX, DX)
    with pytest.raises(DegeneratePlane):
        sectional_curvature(SF4, (0.5, 0.5), (1, 2), (2, 4))


def test_j_sectional_examples(rng):
    assert j_sectional_curvature(SF4, (0, 0), DX) == pytest.approx(4, abs=1e-12)
    sf = SpaceForm(-3.0)
    for x, y in points(rng, 50):
        u = rng.normal(size=2)
        assert j_sectional_curvature(sf, (x, y), u) == pytest.approx(-3, abs=1e-6)
    with pytest.raises(IsotropicVector):
        j_sectional_curvature(SF4, (0, 0), (1, 1))
    assert issubclass(IsotropicVector, DegeneratePlane)


def test_space_form_residual_examples(rng):
    assert space_form_residual(SF4, (0, 0)) <= 1e-10
    assert space_form_residual(SpaceForm(-2.0), (1.1, 0.7)) <= 1e-8
    for c in (1.0, -1.0, 4.0, -4.0):
        sf = SpaceForm(c)
        assert max(space_form_residual(sf, p) for p in points(rng, 100)) <= 1e-7
