import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tentops.geometry import (Lattice, covering_radius, generate_lattice, hyperbolic,
                              hyperbolic_disk_euclidean, in_carleson_box, in_hyperbolic_disk,
                              in_nontangential, is_separated, mobius, pseudo_hyperbolic,
                              uniform_disk_samples)

from conftest import disk_points

radius = st.floats(0, 0.95)
angle = st.floats(0, 2 * math.pi)
point = st.builds(lambda r, t: r * complex(math.cos(t), math.sin(t)), radius, angle)


def test_pseudo_hyperbolic_examples():
    assert pseudo_hyperbolic(0, 0.3 + 0.4j) == pytest.approx(0.5)
    assert pseudo_hyperbolic(0.5, 0.5) == 0
    assert pseudo_hyperbolic(0, 0.6) == pytest.approx(0.6)


def test_hyperbolic_examples():
    assert hyperbolic(0, 0.6) == pytest.approx(math.log(2), abs=1e-12)
    assert hyperbolic(0.3j, 0.3j) == 0
    assert hyperbolic(0, 0.5) == pytest.approx(0.5 * math.log(3), abs=1e-12)


def test_nontangential_examples():
    assert in_nontangential(0.5, 1, 1.0)
    assert not in_nontangential(0.9j, 1, 1.0)
    assert in_nontangential(0, 1, 1.5)
    with pytest.raises(ValueError):
        in_nontangential(0.1, 1, 0.5)


def test_carleson_box_examples():
    assert in_carleson_box(0.5, 0.7)
    assert not in_carleson_box(0.5, 0.7 * np.exp(0.3j))
    assert in_carleson_box(0, 0.99 * np.exp(2.0j))
    # edge of the arc is included
    assert in_carleson_box(0.5, 0.7 * np.exp(0.25j))


def test_hyperbolic_disk_examples():
    assert in_hyperbolic_disk(0, 1.0, 0.5)
    assert not in_hyperbolic_disk(0, 0.5, 0.6)
    assert in_hyperbolic_disk(0.3 + 0.2j, 0.1, 0.3 + 0.2j)


def test_hyperbolic_disk_euclidean_matches_membership(rng):
    c, r = 0.6 * np.exp(0.7j), 0.8
    center, rad = hyperbolic_disk_euclidean(c, r)
    z = disk_points(rng, 4000, 0.999)
    inside = np.array([in_hyperbolic_disk(c, r, w) for w in z])
    euclid = np.abs(z - center) < rad
    assert np.array_equal(inside, euclid)


@given(point, point)
def test_symmetry_and_range(z, w):
    assert pseudo_hyperbolic(z, w) == pytest.approx(pseudo_hyperbolic(w, z), abs=1e-12)
    assert 0 <= pseudo_hyperbolic(z, w) < 1
    assert hyperbolic(z, w) == pytest.approx(hyperbolic(w, z), abs=1e-12)


@given(point, point, point)
def test_triangle_inequality(a, b, c):
    assert hyperbolic(a, c) <= hyperbolic(a, b) + hyperbolic(b, c) + 1e-12


@given(point, point, point)
def test_mobius_invariance(a, z, w):
    lhs = pseudo_hyperbolic(mobius(a, z), mobius(a, w))
    assert lhs == pytest.approx(pseudo_hyperbolic(z, w), abs=1e-12)


@given(point, angle, st.floats(0.51, 3), st.floats(0, 3))
def test_aperture_monotone(z, t, z1, dz):
    eta = complex(math.cos(t), math.sin(t))
    if in_nontangential(z, eta, z1):
        assert in_nontangential(z, eta, z1 + dz)


def test_is_separated_examples():
    assert is_separated([0, 0.6], 0.5)
    assert not is_separated([0, 0.6], 0.7)
    assert is_separated([0.3j], 100.0)


def test_default_lattice_separated_and_covering():
    Z = generate_lattice(0.5, 0.2, 0.99)
    assert 0 in Z.nodes
    assert np.all(np.abs(Z.nodes) <= 0.99 + 1e-12)
    assert is_separated(Z.nodes, 0.4)


def test_lattice_covering_monte_carlo():
    Z = generate_lattice(1.0, 0.4, 0.9)
    z = uniform_disk_samples(10_000, 0.9, seed=7)
    beta = np.array([min(hyperbolic(w, a) for a in Z.nodes) for w in z])
    assert beta.max() < 1.0
    assert covering_radius(Z, 10_000, seed=7) < 1.0


def test_lattice_rejects_bad_radii():
    with pytest.raises(ValueError):
        generate_lattice(0.5, 0.6, 0.9)
    with pytest.raises(ValueError):
        generate_lattice(0.5, 0.2, 1.0)


def test_lattice_json_roundtrip():
    Z = generate_lattice(0.5, 0.2, 0.6)
    x = np.arange(len(Z)) * (1 + 1j)
    data = json.loads(Z.to_json(x))
    assert set(data) == {"r", "kappa", "cap", "nodes", "x"}
    back = Lattice.from_json(Z.to_json())
    assert np.array_equal(back.nodes, Z.nodes)
    assert (back.r, back.kappa, back.cap) == (Z.r, Z.kappa, Z.cap)
    with pytest.raises(ValueError):
        Z.to_json(x[:-1])
