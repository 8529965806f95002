import numpy as np
import pytest

from minkfeat.minkowski import (
    ZeroVector,
    causal_type,
    cross,
    inner,
)


def det3(u, v, w):
    return float(np.linalg.det(np.vstack([u, v, w])))


def test_inner_examples():
    assert inner((1, 0, 0), (1, 0, 0)) == 1.0
    assert inner((0, 0, 1), (0, 0, 1)) == -1.0
    assert inner((1, 0, 1), (1, 0, 1)) == 0.0


def test_inner_symmetric_bilinear():
    rng = np.random.default_rng(0)
    for _ in range(50):
        u, v, w = rng.normal(size=(3, 3))
        a, b = rng.normal(size=2)
        assert inner(u, v) == inner(v, u)
        assert abs(inner(a * u + b * v, w) - (a * inner(u, w) + b * inner(v, w))) < 1e-12


def test_cross_examples():
    assert np.allclose(cross((1, 0, 0), (0, 1, 0)), [0, 0, -1])
    assert np.allclose(cross((1, 0, 1), (0, 1, 0)), [-1, 0, -1])


def test_cross_defining_identity():
    rng = np.random.default_rng(1)
    for _ in range(100):
        u, v, w = rng.normal(size=(3, 3))
        assert abs(inner(cross(u, v), w) - det3(u, v, w)) < 1e-12 * max(
            1.0, abs(det3(u, v, w))
        )


def test_cross_antisymmetric_and_orthogonal():
    rng = np.random.default_rng(2)
    for _ in range(50):
        u, v = rng.normal(size=(2, 3))
        assert np.allclose(cross(u, v), -cross(v, u))
        p = cross(u, v)
        assert abs(inner(p, u)) < 1e-12 and abs(inner(p, v)) < 1e-12


def test_causal_type_examples():
    assert causal_type((1, 0, 0)) == "spacelike"
    assert causal_type((0, 0, 1)) == "timelike"
    assert causal_type((1, 0, 1)) == "lightlike"
    with pytest.raises(ZeroVector):
        causal_type((0, 0, 0))
