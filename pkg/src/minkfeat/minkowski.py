"""Vectors of R^3_1: pseudo-scalar product, causal type, pseudo cross product.

The pseudo-scalar product is <u,v> = u0 v0 + u1 v1 - u2 v2.  The cross
product is fixed by the identity <u x v, w> = det(u, v, w) for all w,
which gives p = (u1 v2 - u2 v1, u2 v0 - u0 v2, u1 v0 - u0 v1).  The
paper-level quantities only depend on this choice through the overall
sign of the mean-curvature field; zero sets of all four feature fields
are convention independent.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "ZeroVector",
    "inner",
    "cross",
    "norm",
    "causal_type",
    "SPACELIKE",
    "LIGHTLIKE",
    "TIMELIKE",
    "LIGHTLIKE_RTOL",
]

SPACELIKE = "spacelike"
LIGHTLIKE = "lightlike"
TIMELIKE = "timelike"

#: |<u,u>| below this times max(1, ||u||^2_euclidean) classifies as lightlike.
LIGHTLIKE_RTOL = 1e-10


class ZeroVector(ValueError):
    """Causal classification of the zero vector is undefined."""


def inner(u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return float(u[0] * v[0] + u[1] * v[1] - u[2] * v[2])


def cross(u, v, sign: float = 1.0) -> np.ndarray:
    """Pseudo cross product; `sign=-1` flips the convention (tests only)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    p = np.array(
        [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[1] * v[0] - u[0] * v[1],
        ]
    )
    return sign * p


def norm(u) -> float:
    """Pseudo norm sqrt(|<u,u>|)."""
    return float(np.sqrt(abs(inner(u, u))))


def causal_type(u) -> str:
    u = np.asarray(u, dtype=float)
    if not np.any(u):
        raise ZeroVector("zero vector has no causal type")
    q = inner(u, u)
    scale = max(1.0, float(np.dot(u, u)))
    if abs(q) < LIGHTLIKE_RTOL * scale:
        return LIGHTLIKE
    return SPACELIKE if q > 0 else TIMELIKE
