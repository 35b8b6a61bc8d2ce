import math

import numpy as np
import pytest

from conftest import disk_points
from tentops.funcmodel import AnalyticFn, derivative, product
from tentops.operators import (apply, apply_S, apply_T, default_image_t, empirical_ratio,
                               factor_orders, image_lp_norm, image_measure)
from tentops.quadrature import QuadratureSpec
from tentops.tentnorm import SpaceParams, kernel_test, lp_norm

Z = AnalyticFn.poly([0, 1])
F1 = AnalyticFn.kernel(0.3, 1.0) + AnalyticFn.poly([1, -2])
G1 = AnalyticFn.kernel(-0.4j, 2.0) + AnalyticFn.log(0.5)


def _close(f, g, z, tol=1e-10):
    a, b = f(z), g(z)
    return np.max(np.abs(a - b)) <= tol * max(1.0, np.max(np.abs(b)))


def beta_fn(a, b):
    return math.gamma(a) * math.gamma(b) / math.gamma(a + b)


def test_examples(rng):
    z = disk_points(rng, 50, 0.8)
    # T_g^{1,0} 1 with g = z is z; T_g^{2,1} z with g = z is z^2 / 2
    assert _close(apply_T(AnalyticFn.constant(1), Z, 1, 0), Z, z)
    assert _close(apply_T(Z, Z, 2, 1), AnalyticFn.poly([0, 0, 0.5]), z)
    # S_g^{1,0} f = I(f' g): f = z, g = z gives z^2 / 2
    assert _close(apply_S(Z, Z, 1, 0), AnalyticFn.poly([0, 0, 0.5]), z)
    with pytest.raises(ValueError):
        apply_T(Z, Z, 1, 1)
    with pytest.raises(ValueError):
        apply_S(Z, Z, 0, 0)


@pytest.mark.parametrize("n,k", [(1, 0), (2, 0), (2, 1), (3, 1)])
def test_derivative_identity_and_vanishing_jet(rng, n, k):
    z = disk_points(rng, 40, 0.6)
    img = apply_T(F1, G1, n, k)
    assert _close(derivative(img, n), product(derivative(F1, k), derivative(G1, n - k)), z, 1e-9)
    assert np.max(np.abs(img.jet(n))) < 1e-12
    imgS = apply_S(F1, G1, n, k)
    assert _close(derivative(imgS, n), product(derivative(F1, n - k), derivative(G1, k)), z, 1e-9)
    assert np.max(np.abs(imgS.jet(n))) < 1e-12


def test_linearity(rng):
    z = disk_points(rng, 40, 0.6)
    c = 2 - 0.5j
    F2 = AnalyticFn.kernel(-0.2, 1.5)
    lhs = apply_T(F1 * c + F2, G1, 2, 1)
    rhs = apply_T(F1, G1, 2, 1) * c + apply_T(F2, G1, 2, 1)
    assert _close(lhs, rhs, z, 1e-9)
    lhs = apply_S(F1, G1 * c + F2, 2, 1)
    rhs = apply_S(F1, G1, 2, 1) * c + apply_S(F1, F2, 2, 1)
    assert _close(lhs, rhs, z, 1e-9)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 3)])
def test_duality(rng, n, k):
    z = disk_points(rng, 40, 0.7)
    assert _close(apply_S(F1, G1, n, k), apply_T(F1, G1, n, n - k), z, 1e-12)


def test_apply_and_factor_orders():
    P = SpaceParams(2, 2, n=3, k=1, op_kind="S")
    assert factor_orders(P) == (2, 1)
    assert factor_orders(SpaceParams(2, 2, n=3, k=1)) == (1, 2)
    z = np.array([0.1, 0.3j])
    assert _close(apply(F1, G1, P), apply_S(F1, G1, 3, 1), z)
    assert default_image_t(SpaceParams(2, 2)) == 3
    assert default_image_t(SpaceParams(1, 1, 0, 3)) == 6


def test_image_norm_examples():
    # T_z^{1,0} 1 = z: measure (1-|z|^2)^3 dA, mass B(1, 4) = 1/4 at a = 0, t = 1
    P = SpaceParams(2, 2)
    mu = image_measure(AnalyticFn.constant(1), Z, P)
    assert kernel_test(mu, 1.0, [0j]).value == pytest.approx(beta_fn(1, 4), rel=1e-10)
    # f = z, g = z^2: (T f)' = 2z^2, mass 4 B(3, 4)
    mu = image_measure(Z, AnalyticFn.poly([0, 0, 1]), P)
    assert kernel_test(mu, 1.0, [0j]).value == pytest.approx(4 * beta_fn(3, 4), rel=1e-10)
    assert image_lp_norm(F1, AnalyticFn.constant(3), P) == 0
    assert image_measure(F1, AnalyticFn.constant(3), P) is None


@pytest.mark.parametrize("P", [SpaceParams(2, 2, 0, 0, 1, 0, "T"), SpaceParams(2, 4, 0, 2, 2, 1, "T"),
                               SpaceParams(2, 2, 0, 2, 2, 1, "S")])
def test_image_norm_matches_lp_norm_of_image(P):
    f = AnalyticFn.kernel(0.3, 1.0)
    g = AnalyticFn.kernel(0.5j, 1.0)
    t = default_image_t(P)
    direct = image_lp_norm(f, g, P)
    via = lp_norm(apply(f, g, P), P.q, P.beta, P.n, t)
    assert direct == pytest.approx(via, rel=1e-6)


def test_empirical_ratio():
    P = SpaceParams(2, 2)
    corpus = [("one", AnalyticFn.constant(1)), ("z", Z)]
    tab = empirical_ratio(Z, P, corpus)
    assert tab.value == max(r.ratio for r in tab.rows)
    assert [r.f_id for r in tab.rows] == ["one", "z"]
    # T_z 1 = z, ||1|| = 1, so the first ratio is ||z||_{LP} with an empty jet
    assert tab.rows[0].ratio == pytest.approx(image_lp_norm(AnalyticFn.constant(1), Z, P))
    assert empirical_ratio(AnalyticFn.constant(2), P, corpus).value == 0
    same = empirical_ratio(Z, P, dict(corpus))
    assert same.value == tab.value
    assert empirical_ratio(Z, P, [f for _, f in corpus]).rows[1].f_id == "f1"
    scaled = empirical_ratio(Z * 3, P, corpus)
    assert scaled.value == pytest.approx(3 * tab.value, rel=1e-10)
    with pytest.raises(ValueError):
        empirical_ratio(Z, P, [])
    with pytest.raises(ValueError):
        empirical_ratio(Z, P, [AnalyticFn()])
    assert len(tab.csv_rows("z", P)) == 2
