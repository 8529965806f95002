"""Independent brute-force verifiers used by the test suite.

Nothing here touches the jet-algebra code paths: surface data is
evaluated through a plain monomial sum over the patch coefficients, all
derivatives are central finite differences (one Richardson level), and
zero sets are counted on grids with union-find.  Oracles are slow by
design; they exist to cross-check the main pipeline, not to replace it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "OracleReport",
    "InsufficientPolylineResolution",
    "raw_field",
    "fd_gradient",
    "fd_hessian",
    "grid_zero_census",
    "numeric_contact",
]

FD_STEP = 1e-5


class InsufficientPolylineResolution(ValueError):
    """Traced polyline too coarse for the requested slope window."""


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    main_value: float
    oracle_value: float

    @property
    def abs_error(self) -> float:
        return abs(self.main_value - self.oracle_value)

    @property
    def rel_error(self) -> float:
        scale = max(abs(self.main_value), abs(self.oracle_value), 1e-300)
        return self.abs_error / scale


def _poly_eval(triples, x, y):
    """Monomial-sum evaluation of (s, i, value) triples at (x, y)."""
    out = 0.0
    for s, i, v in triples:
        if v != 0.0:
            out += v * x ** (s - i) * y**i
    return out


def _embedding(patch):
    triples = patch.f.to_triangular()
    form = patch.form

    def emb(u, v):
        fv = _poly_eval(triples, u, v)
        if form == "timelike":
            return np.array([u, fv, v])
        return np.array([u, v, fv])

    return emb


def raw_field(patch, kind, h: float = FD_STEP, h2: float = 3e-4):
    """Pointwise feature-field evaluator through the raw embedding.

    First and second derivatives of the embedding come from central
    differences with one Richardson level; the field formulas are the
    textbook ones written inline.  Second differences use a larger step:
    at h = 1e-5 their roundoff floor (eps/h^2 ~ 4e-6) would swamp the
    1e-6 agreement the oracle is meant to certify.
    """
    emb = _embedding(patch)

    def d1(q, axis):
        e = np.zeros(2)
        e[axis] = 1.0

        def stencil(hh):
            return (emb(*(q + hh * e)) - emb(*(q - hh * e))) / (2 * hh)

        a, b = stencil(h), stencil(h / 2)
        return (4 * b - a) / 3

    def d2(q, ax1, ax2):
        e1 = np.zeros(2)
        e1[ax1] = 1.0
        e2 = np.zeros(2)
        e2[ax2] = 1.0

        def stencil(hh):
            if ax1 == ax2:
                return (emb(*(q + hh * e1)) - 2 * emb(*q) + emb(*(q - hh * e1))) / hh**2
            return (
                emb(*(q + hh * e1 + hh * e2))
                - emb(*(q + hh * e1 - hh * e2))
                - emb(*(q - hh * e1 + hh * e2))
                + emb(*(q - hh * e1 - hh * e2))
            ) / (4 * hh**2)

        a, b = stencil(h2), stencil(h2 / 2)
        return (4 * b - a) / 3

    def minner(a, b):
        return a[0] * b[0] + a[1] * b[1] - a[2] * b[2]

    def mcross(a, b):
        return np.array(
            [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[1] * b[0] - a[0] * b[1]]
        )

    def value(x, y):
        q = np.array([x, y], dtype=float)
        xu, xv = d1(q, 0), d1(q, 1)
        E, F, G = minner(xu, xu), minner(xu, xv), minner(xv, xv)
        if kind == "LD":
            return F * F - E * G
        nrm = mcross(xu, xv)
        l = minner(nrm, d2(q, 0, 0))
        m = minner(nrm, d2(q, 0, 1))
        n = minner(nrm, d2(q, 1, 1))
        if kind == "LPL":
            return (E * n - G * l) ** 2 - 4 * (F * n - G * m) * (E * m - F * l)
        if kind == "PC":
            return l * n - m * m
        if kind == "MCNC":
            return l * G - 2 * m * F + n * E
        raise ValueError(f"unknown field kind {kind!r}")

    return value


def fd_gradient(evaluator, q, h: float = FD_STEP) -> np.ndarray:
    """Central-difference gradient with one Richardson level."""
    q = np.asarray(q, dtype=float)

    def partial(axis, hh):
        e = np.zeros(2)
        e[axis] = hh
        return (evaluator(*(q + e)) - evaluator(*(q - e))) / (2 * hh)

    out = np.empty(2)
    for axis in range(2):
        a, b = partial(axis, h), partial(axis, h / 2)
        out[axis] = (4 * b - a) / 3
    return out


def fd_hessian(evaluator, q, h: float = 1e-4) -> np.ndarray:
    """Central-difference Hessian with one Richardson level."""
    q = np.asarray(q, dtype=float)

    def second(ax1, ax2, hh):
        e1 = np.zeros(2)
        e1[ax1] = hh
        e2 = np.zeros(2)
        e2[ax2] = hh
        if ax1 == ax2:
            return (evaluator(*(q + e1)) - 2 * evaluator(*q) + evaluator(*(q - e1))) / hh**2
        return (
            evaluator(*(q + e1 + e2))
            - evaluator(*(q + e1 - e2))
            - evaluator(*(q - e1 + e2))
            + evaluator(*(q - e1 - e2))
        ) / (4 * hh**2)

    H = np.empty((2, 2))
    for i in range(2):
        for j in range(i, 2):
            a, b = second(i, j, h), second(i, j, h / 2)
            H[i, j] = H[j, i] = (4 * b - a) / 3
    return H


def grid_zero_census(evaluator, domain, n: int = 129, tol_factor: float = 3.0):
    """(component count, isolated-zero count) of {evaluator = 0} on a grid.

    A grid point belongs to the near-zero set when |f| is below
    tol_factor times a one-cell linear bound estimated from its
    neighbours; components are joined over 8-neighbourhoods.  Components
    whose cells show no sign change are counted as isolated zeros.
    """
    (x0, x1), (y0, y1) = domain
    xs = np.linspace(x0, x1, n)
    ys = np.linspace(y0, y1, n)
    V = np.empty((n, n))
    for i, xv in enumerate(xs):
        for j, yv in enumerate(ys):
            V[i, j] = evaluator(xv, yv)
    # local linear scale: max neighbour difference approximates |grad|*cell
    pad = np.pad(V, 1, mode="edge")
    local = np.zeros((n, n))
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == dj == 0:
                continue
            local = np.maximum(local, np.abs(pad[1 + di : 1 + di + n, 1 + dj : 1 + dj + n] - V))
    thresh = tol_factor * np.maximum(local, 1e-14)
    mask = np.abs(V) <= thresh

    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    pts = np.argwhere(mask)
    for i, j in pts:
        parent[(i, j)] = (i, j)
    for i, j in pts:
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                if (di or dj) and (i + di, j + dj) in parent:
                    union((i, j), (i + di, j + dj))
    comps = {}
    for i, j in pts:
        comps.setdefault(find((i, j)), []).append((i, j))

    isolated = 0
    for members in comps.values():
        signs = {np.sign(V[i, j]) for i, j in members if abs(V[i, j]) > 0}
        # grow by one ring to look for a sign change around the component
        ring_signs = set()
        for i, j in members:
            for di in (-1, 0, 1):
                for dj in (-1, 0, 1):
                    ii, jj = i + di, j + dj
                    if 0 <= ii < n and 0 <= jj < n:
                        ring_signs.add(np.sign(V[ii, jj]))
        if not ({-1.0, 1.0} <= ring_signs):
            isolated += 1
    return len(comps), isolated


def numeric_contact(polyline, evaluator, p, d_lo: float = 1e-4, d_hi: float = 1e-2) -> int:
    """Contact order as the log-log slope of |field| against distance to p
    along the polyline, rounded to the nearest integer.

    Points below 50x the double-precision noise floor of the evaluator
    are dropped; requires at least 8 clean samples spanning half a
    decade."""
    pts = np.asarray(polyline, dtype=float)
    d = np.hypot(pts[:, 0] - p[0], pts[:, 1] - p[1])
    keep = (d >= d_lo) & (d <= d_hi)
    if np.count_nonzero(keep) < 8:
        raise InsufficientPolylineResolution(
            f"only {np.count_nonzero(keep)} polyline points in [{d_lo}, {d_hi}]"
        )
    pts, d = pts[keep], d[keep]
    vals = np.abs(np.array([evaluator(px, py) for px, py in pts]))
    noise = 50 * np.finfo(float).eps
    ok = vals > noise
    if np.count_nonzero(ok) < 8 or np.log10(d[ok].max() / d[ok].min()) < 0.5:
        raise InsufficientPolylineResolution("not enough clean samples for a slope fit")
    slope = np.polyfit(np.log(d[ok]), np.log(vals[ok]), 1)[0]
    return int(round(slope))
