"""Zero-set extraction for feature fields on a rectangle.

Marching squares on a regular grid, each edge crossing refined by
bisection, segments linked into polylines.  Saddle cells are resolved by
the sign of the cell-centre sample.  Isolated zeros (Morse minima/maxima
sitting exactly at level 0) are found separately from grid minima of the
absolute field, since sign-based cells never see them.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .patch import FeatureField

__all__ = [
    "Rect",
    "TracedCurve",
    "IntersectionPoint",
    "trace",
    "intersect",
    "DEFAULT_DOMAIN",
    "DEFAULT_GRID",
    "REFINE_TOL",
]

log = logging.getLogger(__name__)

#: feature-field jets are Taylor data around the origin; the paper's
#: statements are local, so this is the documented validity radius.
DEFAULT_DOMAIN = ((-0.25, 0.25), (-0.25, 0.25))
DEFAULT_GRID = 257
REFINE_TOL = 1e-10
_BISECT_ITERS = 30


@dataclass(frozen=True)
class Rect:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    @classmethod
    def make(cls, dom) -> "Rect":
        if isinstance(dom, Rect):
            return dom
        (x0, x1), (y0, y1) = dom
        return cls(float(x0), float(x1), float(y0), float(y1))

    @property
    def diag(self) -> float:
        return float(np.hypot(self.xmax - self.xmin, self.ymax - self.ymin))

    def contains(self, p, pad: float = 0.0) -> bool:
        return (
            self.xmin - pad <= p[0] <= self.xmax + pad
            and self.ymin - pad <= p[1] <= self.ymax + pad
        )


@dataclass
class TracedCurve:
    kind: str
    polylines: list[np.ndarray]          # each (m, 2)
    residuals: list[np.ndarray]          # matching (m,)
    isolated: np.ndarray                 # (k, 2) isolated zeros
    domain: Rect
    grid: int

    @property
    def empty(self) -> bool:
        return not self.polylines and len(self.isolated) == 0

    def vertices(self) -> np.ndarray:
        if not self.polylines:
            return np.zeros((0, 2))
        return np.vstack(self.polylines)

    def min_distance_to(self, p) -> float:
        pts = [self.vertices()] if self.polylines else []
        if len(self.isolated):
            pts.append(self.isolated)
        if not pts:
            return np.inf
        allp = np.vstack(pts)
        return float(np.min(np.hypot(allp[:, 0] - p[0], allp[:, 1] - p[1])))


@dataclass(frozen=True)
class IntersectionPoint:
    position: np.ndarray
    kinds: tuple[str, str]
    residuals: tuple[float, float]
    transversal: bool


def _bisect_edge(f, p0, p1, s0):
    """Root of f on the segment [p0, p1] given sign(f(p0)) = s0 != 0."""
    a, b = np.asarray(p0, float), np.asarray(p1, float)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (a + b)
        fm = float(f(mid[0], mid[1]))
        if fm == 0.0:
            return mid, 0.0
        if (fm > 0) == (s0 > 0):
            a = mid
        else:
            b = mid
    mid = 0.5 * (a + b)
    return mid, float(f(mid[0], mid[1]))


def trace(fld: FeatureField, domain=DEFAULT_DOMAIN, n: int = DEFAULT_GRID) -> TracedCurve:
    """Marching-squares extraction of {field = 0} on the domain."""
    if n < 16:
        raise ValueError("grid size must be at least 16")
    rect = Rect.make(domain)
    xs = np.linspace(rect.xmin, rect.xmax, n)
    ys = np.linspace(rect.ymin, rect.ymax, n)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    V = np.asarray(fld(X, Y), dtype=float)
    S = np.sign(V)
    S[S == 0] = 1.0  # grid value exactly zero: treat as positive, bisection recovers it

    f = fld
    # refined crossing on each grid edge, indexed by (i, j, orientation)
    cross_pts: dict[tuple[int, int, str], tuple[np.ndarray, float]] = {}

    def edge_point(i, j, kind):
        key = (i, j, kind)
        horiz = kind == "h"
        got = cross_pts.get(key)
        if got is not None:
            return got
        if horiz:  # from (i,j) to (i+1,j)
            p0 = (xs[i], ys[j])
            p1 = (xs[i + 1], ys[j])
            s0 = S[i, j]
        else:      # from (i,j) to (i,j+1)
            p0 = (xs[i], ys[j])
            p1 = (xs[i], ys[j + 1])
            s0 = S[i, j]
        pt, res = _bisect_edge(f, p0, p1, s0)
        cross_pts[key] = (pt, abs(res))
        return cross_pts[key]

    # segments as pairs of edge keys
    segments: list[tuple[tuple, tuple]] = []
    hcross = S[:-1, :] * S[1:, :] < 0   # edge (i,j)-(i+1,j)
    vcross = S[:, :-1] * S[:, 1:] < 0   # edge (i,j)-(i,j+1)
    cells = np.argwhere(hcross[:, :-1] | hcross[:, 1:] | vcross[:-1, :] | vcross[1:, :])
    for i, j in cells:
        edges = []
        if hcross[i, j]:
            edges.append((i, j, "h"))       # bottom
        if vcross[i + 1, j]:
            edges.append((i + 1, j, "v"))   # right
        if hcross[i, j + 1]:
            edges.append((i, j + 1, "h"))   # top
        if vcross[i, j]:
            edges.append((i, j, "v"))       # left
        if len(edges) == 2:
            segments.append((edges[0], edges[1]))
        elif len(edges) == 4:
            # saddle cell: centre sample decides the pairing
            cx = 0.5 * (xs[i] + xs[i + 1])
            cy = 0.5 * (ys[j] + ys[j + 1])
            sc = np.sign(float(f(cx, cy))) or 1.0
            bottom, right, top, left = (i, j, "h"), (i + 1, j, "v"), (i, j + 1, "h"), (i, j, "v")
            if sc == S[i, j]:
                segments.append((bottom, right))
                segments.append((top, left))
            else:
                segments.append((bottom, left))
                segments.append((top, right))
        # odd counts only happen when a vertex sits exactly on the curve;
        # the sign convention above prevents that

    # link segments into polylines over shared edge keys
    adj: dict[tuple, list[int]] = {}
    for idx, (e0, e1) in enumerate(segments):
        adj.setdefault(e0, []).append(idx)
        adj.setdefault(e1, []).append(idx)
    used = np.zeros(len(segments), dtype=bool)
    polylines, residuals = [], []

    def walk(start_edge):
        chain = [start_edge]
        while True:
            nxt = [k for k in adj.get(chain[-1], []) if not used[k]]
            if not nxt:
                break
            k = nxt[0]
            used[k] = True
            e0, e1 = segments[k]
            chain.append(e1 if e0 == chain[-1] else e0)
        return chain

    # open chains first (start from edges of valence 1), then loops
    for start, items in sorted(adj.items()):
        if len(items) == 1 and not used[items[0]]:
            k = items[0]
            used[k] = True
            e0, e1 = segments[k]
            first = start
            chain = [first, e1 if e0 == first else e0]
            chain += walk(chain[-1])[1:]
            polylines.append(chain)
    for idx in range(len(segments)):
        if not used[idx]:
            used[idx] = True
            e0, e1 = segments[idx]
            chain = [e0, e1]
            chain += walk(chain[-1])[1:]
            polylines.append(chain)

    cell = max(xs[1] - xs[0], ys[1] - ys[0])
    out_lines, out_res = [], []
    point_like = []
    for chain in polylines:
        pts = np.array([edge_point(*e)[0] for e in chain])
        res = np.array([edge_point(*e)[1] for e in chain])
        # a chain of sub-cell diameter whose centre is also a zero is an
        # isolated zero sitting exactly on a lattice point, wrapped by the
        # forced-sign convention (tiny genuine ovals keep a nonzero centre)
        ctr = pts.mean(axis=0)
        if (np.ptp(pts[:, 0]) <= cell and np.ptp(pts[:, 1]) <= cell
                and abs(float(fld(ctr[0], ctr[1]))) < 10 * REFINE_TOL):
            point_like.append(ctr)
            continue
        out_lines.append(pts)
        out_res.append(res)

    isolated, extra_lines, extra_res = _signless_zeros(fld, V, xs, ys, hcross, vcross)
    out_lines += extra_lines
    out_res += extra_res
    iso_list = [p for p in isolated]
    for p in point_like:
        if not any(np.hypot(*(p - q)) < 2 * cell for q in iso_list):
            iso_list.append(p)
    isolated = np.array(iso_list) if iso_list else np.zeros((0, 2))
    return TracedCurve(fld.kind, out_lines, out_res, isolated, rect, n)


def _signless_zeros(fld, V, xs, ys, hcross, vcross):
    """Zero-level sets invisible to sign-change cells.

    Local minima of |field| on the grid away from any sign change are
    polished by Gauss-Newton on the gradient (the zero level of a field
    of constant sign consists of critical points).  Polished points are
    kept when the field value is below tolerance; points that chain
    within two grid cells of each other form degenerate polylines (e.g.
    a squared line), lone points are reported as isolated zeros (A1+)."""
    A = np.abs(V)
    interior = A[1:-1, 1:-1]
    is_min = (
        (interior <= A[:-2, 1:-1]) & (interior <= A[2:, 1:-1])
        & (interior <= A[1:-1, :-2]) & (interior <= A[1:-1, 2:])
    )
    cell_scale = max(xs[1] - xs[0], ys[1] - ys[0])
    found = []
    for i, j in np.argwhere(is_min):
        ii, jj = i + 1, j + 1
        if hcross[max(ii - 1, 0) : ii + 1, jj].any() or vcross[ii, max(jj - 1, 0) : jj + 1].any():
            continue
        x0, y0 = xs[ii], ys[jj]
        # plausibility: a zero extremum has |f| = O(||H|| d^2) within a cell
        Hn = max(1.0, float(np.abs(fld.jet.hessian_at(x0, y0)).max()))
        if A[ii, jj] > 4.0 * Hn * cell_scale**2:
            continue
        p = np.array([x0, y0])
        ok = False
        for _ in range(60):
            g = fld.gradient_at(p[0], p[1])
            H = fld.jet.hessian_at(p[0], p[1])
            step = np.linalg.lstsq(H, -g, rcond=None)[0]
            p = p + step
            if np.linalg.norm(step) < 1e-14:
                ok = True
                break
        if ok and abs(float(fld(p[0], p[1]))) < REFINE_TOL:
            if not any(np.hypot(*(p - q)) < 0.5 * cell_scale for q in found):
                found.append(p)
    if not found:
        return np.zeros((0, 2)), [], []

    # chain points within two cells into polylines, keep singletons isolated
    pts = np.array(found)
    m = len(pts)
    link = 2.2 * cell_scale
    parent = list(range(m))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if np.hypot(*(pts[i] - pts[j])) < link:
                parent[root(i)] = root(j)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(root(i), []).append(i)

    isolated, lines, res = [], [], []
    for members in groups.values():
        if len(members) == 1:
            isolated.append(pts[members[0]])
            continue
        sub = pts[members]
        # order greedily from the lexicographically smallest point
        order = [int(np.lexsort((sub[:, 1], sub[:, 0]))[0])]
        left = set(range(len(sub))) - set(order)
        while left:
            last = sub[order[-1]]
            nxt = min(left, key=lambda k: np.hypot(*(sub[k] - last)))
            order.append(nxt)
            left.remove(nxt)
        chain = sub[order]
        lines.append(chain)
        res.append(np.abs(np.asarray(fld(chain[:, 0], chain[:, 1]), float)))
    iso = np.array(isolated) if isolated else np.zeros((0, 2))
    return iso, lines, res


def intersect(a: FeatureField, b: FeatureField, domain=DEFAULT_DOMAIN,
              n: int = DEFAULT_GRID, merge_tol: float = 1e-6) -> list[IntersectionPoint]:
    """Common zeros of two fields: seeds from cells where both change
    sign, polished by Newton on (a, b) with the exact jet Jacobian."""
    rect = Rect.make(domain)
    xs = np.linspace(rect.xmin, rect.xmax, n)
    ys = np.linspace(rect.ymin, rect.ymax, n)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    Sa = np.sign(np.asarray(a(X, Y), float))
    Sb = np.sign(np.asarray(b(X, Y), float))
    Sa[Sa == 0] = 1
    Sb[Sb == 0] = 1

    def cell_changes(S):
        c = np.zeros((n - 1, n - 1), dtype=bool)
        c |= S[:-1, :-1] * S[1:, :-1] < 0
        c |= S[:-1, 1:] * S[1:, 1:] < 0
        c |= S[:-1, :-1] * S[:-1, 1:] < 0
        c |= S[1:, :-1] * S[1:, 1:] < 0
        return c

    seeds = np.argwhere(cell_changes(Sa) & cell_changes(Sb))
    ax, ay = a.jet.diff("x"), a.jet.diff("y")
    bx, by = b.jet.diff("x"), b.jet.diff("y")
    found: list[np.ndarray] = []
    for i, j in seeds:
        p = np.array([0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])])
        converged = False
        for _ in range(60):
            r = np.array([float(a(p[0], p[1])), float(b(p[0], p[1]))])
            J = np.array(
                [
                    [float(ax.eval(p[0], p[1])), float(ay.eval(p[0], p[1]))],
                    [float(bx.eval(p[0], p[1])), float(by.eval(p[0], p[1]))],
                ]
            )
            try:
                step = np.linalg.solve(J, -r)
            except np.linalg.LinAlgError:
                break
            # keep Newton inside a sane neighbourhood of the seed cell
            if np.linalg.norm(step) > 4 * rect.diag:
                break
            p = p + step
            if np.linalg.norm(step) < 1e-15 or (np.abs(r) < REFINE_TOL).all():
                converged = np.max(np.abs([float(a(p[0], p[1])), float(b(p[0], p[1]))])) < REFINE_TOL
                if converged:
                    break
        if not converged:
            log.debug("intersect: Newton did not converge from cell (%d,%d)", i, j)
            continue
        if not rect.contains(p, pad=rect.diag * 1e-9):
            continue
        found.append(p)

    def point_data(p):
        ga = a.gradient_at(p[0], p[1])
        gb = b.gradient_at(p[0], p[1])
        na, nb = np.linalg.norm(ga), np.linalg.norm(gb)
        floor = 1e-12
        # Newton resolves the position only to ~ residual_tol / |gradient|
        uncert = REFINE_TOL * (1.0 / max(na, floor) + 1.0 / max(nb, floor))
        transversal = False
        if na > floor and nb > floor:
            sin_angle = abs(ga[0] * gb[1] - ga[1] * gb[0]) / (na * nb)
            transversal = bool(sin_angle > 1e-4 and uncert < merge_tol)
        if not transversal:
            # tangential roots additionally smear like sqrt(tol) along the
            # common tangent direction
            uncert = max(uncert, 25.0 * np.sqrt(REFINE_TOL))
        return transversal, float(uncert)

    merged: list[tuple[np.ndarray, bool, float]] = []
    for p in sorted(found, key=lambda q: (q[0], q[1])):
        tr_p, u_p = point_data(p)
        dup = False
        for q, _, u_q in merged:
            if np.hypot(*(p - q)) < max(merge_tol, 4.0 * (u_p + u_q)):
                dup = True
                break
        if not dup:
            merged.append((p, tr_p, u_p))

    return [
        IntersectionPoint(
            position=p,
            kinds=(a.kind, b.kind),
            residuals=(float(a(p[0], p[1])), float(b(p[0], p[1]))),
            transversal=tr_p,
        )
        for p, tr_p, _ in merged
    ]
