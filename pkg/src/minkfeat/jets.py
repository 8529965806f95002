"""Truncated bivariate polynomial jets.

A jet of degree k stores the coefficients a_{si} of the monomials
x^(s-i) y^i for 0 <= i <= s <= k.  Internally the grid is kept as a
square array ``c[p, q]`` holding the coefficient of x^p y^q, which makes
ring operations plain array arithmetic.  Ring operations truncate above
the degree, so a Jet2 of degree k is an element of R[x,y]/m^(k+1).

Jets are immutable after construction and safe to share across threads.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "Jet2",
    "NonzeroConstantTerm",
    "DegenerateIFT",
    "ift_series",
    "invert_map",
    "resultant_quartic_cubic",
    "sylvester_resultant_quartic_cubic",
]


class NonzeroConstantTerm(ValueError):
    """Substitution argument has a nonzero constant term."""


class DegenerateIFT(ValueError):
    """The partial derivative needed by the implicit series vanishes at 0."""


class Jet2:
    """Degree-k truncated polynomial in two variables."""

    __slots__ = ("degree", "c")

    def __init__(self, degree: int, c: np.ndarray | None = None):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        self.degree = int(degree)
        n = self.degree + 1
        if c is None:
            arr = np.zeros((n, n))
        else:
            arr = np.zeros((n, n))
            m = min(n, c.shape[0]), min(n, c.shape[1])
            arr[: m[0], : m[1]] = np.asarray(c, dtype=float)[: m[0], : m[1]]
        # zero out anything above the truncation degree
        p, q = np.indices(arr.shape)
        arr[p + q > self.degree] = 0.0
        arr.setflags(write=False)
        self.c = arr

    # ------------------------------------------------------------------ build
    @classmethod
    def zero(cls, degree: int) -> "Jet2":
        return cls(degree)

    @classmethod
    def constant(cls, value: float, degree: int) -> "Jet2":
        j = np.zeros((degree + 1, degree + 1))
        j[0, 0] = value
        return cls(degree, j)

    @classmethod
    def variable(cls, name: str, degree: int) -> "Jet2":
        j = np.zeros((degree + 1, degree + 1))
        if name == "x":
            j[1, 0] = 1.0
        elif name == "y":
            j[0, 1] = 1.0
        else:
            raise ValueError("variable must be 'x' or 'y'")
        return cls(degree, j)

    @classmethod
    def from_triangular(cls, degree: int, coeffs) -> "Jet2":
        """Build from (s, i, value) triples with monomial x^(s-i) y^i."""
        j = np.zeros((degree + 1, degree + 1))
        for s, i, v in coeffs:
            s, i = int(s), int(i)
            if not (0 <= i <= s <= degree):
                raise ValueError(f"bad triangular index ({s},{i}) for degree {degree}")
            j[s - i, i] = float(v)
        return cls(degree, j)

    def to_triangular(self):
        """Flat list of (s, i, value) triples, row-major in (s, i)."""
        out = []
        for s in range(self.degree + 1):
            for i in range(s + 1):
                out.append((s, i, float(self.c[s - i, i])))
        return out

    # ------------------------------------------------------------------ ring
    def _binary(self, other, op):
        if isinstance(other, (int, float)):
            other = Jet2.constant(float(other), self.degree)
        k = max(self.degree, other.degree)
        a = Jet2(k, self.c).c
        b = Jet2(k, other.c).c
        return Jet2(k, op(a, b))

    def __add__(self, other):
        return self._binary(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Jet2(self.degree, -self.c)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Jet2(self.degree, self.c * float(other))
        k = max(self.degree, other.degree)
        a, b = self.c, other.c
        if np.count_nonzero(a) > np.count_nonzero(b):
            a, b = b, a
        out = np.zeros((k + 1, k + 1))
        for p, q in zip(*np.nonzero(a)):
            v = a[p, q]
            nb = min(k + 1 - p, b.shape[0])
            mb = min(k + 1 - q, b.shape[1])
            if nb > 0 and mb > 0:
                out[p : p + nb, q : q + mb] += v * b[:nb, :mb]
        return Jet2(k, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not supported")
        out = Jet2.constant(1.0, self.degree)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Jet2)
            and self.degree == other.degree
            and np.array_equal(self.c, other.c)
        )

    def __repr__(self):
        terms = []
        for s in range(self.degree + 1):
            for i in range(s + 1):
                v = self.c[s - i, i]
                if v != 0.0:
                    terms.append(f"{v:g}*x^{s - i}*y^{i}")
        return f"Jet2(deg={self.degree}: {' + '.join(terms) or '0'})"

    # ------------------------------------------------------------- operations
    def truncated(self, degree: int) -> "Jet2":
        return Jet2(degree, self.c)

    def coeff(self, p: int, q: int) -> float:
        """Coefficient of x^p y^q."""
        if p + q > self.degree:
            return 0.0
        return float(self.c[p, q])

    def diff(self, var: str) -> "Jet2":
        n = self.degree + 1
        out = np.zeros((n, n))
        if var == "x":
            for p in range(1, n):
                out[p - 1, :] += p * self.c[p, :]
        elif var == "y":
            for q in range(1, n):
                out[:, q - 1] += q * self.c[:, q]
        else:
            raise ValueError("var must be 'x' or 'y'")
        return Jet2(max(self.degree - 1, 0), out)

    def eval(self, x, y):
        """Evaluate exactly at scalars or numpy arrays (broadcasting)."""
        return np.polynomial.polynomial.polyval2d(np.asarray(x), np.asarray(y), self.c)

    def gradient_at(self, x: float, y: float):
        return np.array([self.diff("x").eval(x, y), self.diff("y").eval(x, y)])

    def hessian_at(self, x: float, y: float):
        fx, fy = self.diff("x"), self.diff("y")
        return np.array(
            [
                [fx.diff("x").eval(x, y), fx.diff("y").eval(x, y)],
                [fx.diff("y").eval(x, y), fy.diff("y").eval(x, y)],
            ]
        )

    def compose(self, u: "Jet2", v: "Jet2") -> "Jet2":
        """Truncated substitution self(u(x,y), v(x,y)).

        u and v must vanish at the origin so that truncation commutes
        with substitution.
        """
        if abs(u.coeff(0, 0)) != 0.0 or abs(v.coeff(0, 0)) != 0.0:
            raise NonzeroConstantTerm("substituted jets must have zero constant term")
        k = max(self.degree, u.degree, v.degree)
        u = u.truncated(k)
        v = v.truncated(k)
        # Horner-style accumulation over rows of the coefficient grid:
        # f = sum_p x^p * (sum_q c[p,q] y^q)  evaluated at x=u, y=v.
        out = Jet2.zero(k)
        vpow = [Jet2.constant(1.0, k)]
        for q in range(1, k + 1):
            vpow.append(vpow[-1] * v)
        upow = Jet2.constant(1.0, k)
        for p in range(self.degree + 1):
            row = Jet2.zero(k)
            nz = np.nonzero(self.c[p, :])[0]
            for q in nz:
                row = row + vpow[q] * float(self.c[p, q])
            if nz.size:
                out = out + upow * row
            upow = upow * u
        return out

    def recenter(self, px: float, py: float) -> "Jet2":
        """Jet of the same polynomial about the point (px, py).

        Exact binomial shift: g(x, y) = f(x + px, y + py), truncated at
        the same degree (the shift of a polynomial of degree k has
        degree k, so no information is lost).
        """
        from math import comb

        n = self.degree + 1
        # shift in x: coefficient of x^a in sum_p c[p,q] (x+px)^p
        cx = np.zeros((n, n))
        for p in range(n):
            for a_ in range(p + 1):
                cx[a_, :] += comb(p, a_) * px ** (p - a_) * self.c[p, :]
        out = np.zeros((n, n))
        for q in range(n):
            for b_ in range(q + 1):
                out[:, b_] += comb(q, b_) * py ** (q - b_) * cx[:, q]
        return Jet2(self.degree, out)


# ---------------------------------------------------------------- series ops
def _univariate(coeffs, degree, var="y"):
    """Jet2 from ascending univariate coefficients in the given variable."""
    j = np.zeros((degree + 1, degree + 1))
    for k, v in enumerate(coeffs[: degree + 1]):
        if var == "y":
            j[0, k] = v
        else:
            j[k, 0] = v
    return Jet2(degree, j)


def ift_series(F: Jet2, solve_for: str, order: int, tol: float = 1e-12) -> np.ndarray:
    """Coefficients g_1..g_order of the branch of F = 0 through the origin.

    With solve_for='x' returns g such that F(g(y), y) = O(y^(order+1));
    with solve_for='y' the symmetric statement.  Requires F(0,0) = 0 and
    a nonzero partial in the solved variable.
    """
    if solve_for not in ("x", "y"):
        raise ValueError("solve_for must be 'x' or 'y'")
    scale = max(1.0, float(np.max(np.abs(F.c))))
    if abs(F.coeff(0, 0)) > tol * scale:
        raise DegenerateIFT("F(0,0) != 0")
    lead = F.coeff(1, 0) if solve_for == "x" else F.coeff(0, 1)
    if abs(lead) <= tol * scale:
        raise DegenerateIFT("required partial derivative vanishes at the origin")

    work_deg = max(F.degree, order)
    F = F.truncated(work_deg)
    param = "y" if solve_for == "x" else "x"
    g = np.zeros(order + 1)  # g[k] multiplies param^k, g[0] = 0
    for k in range(1, order + 1):
        gj = _univariate(g, work_deg, var=param)
        if solve_for == "x":
            resid = F.compose(gj, Jet2.variable("y", work_deg))
            rk = resid.coeff(0, k)
        else:
            resid = F.compose(Jet2.variable("x", work_deg), gj)
            rk = resid.coeff(k, 0)
        g[k] = -rk / lead
    return g[1:]


def ift_residual(F: Jet2, solve_for: str, g: np.ndarray) -> np.ndarray:
    """Residual series coefficients of F(g, param) through order len(g)."""
    order = len(g)
    work_deg = max(F.degree, order)
    F = F.truncated(work_deg)
    coeffs = np.concatenate([[0.0], g])
    param = "y" if solve_for == "x" else "x"
    gj = _univariate(coeffs, work_deg, var=param)
    if solve_for == "x":
        resid = F.compose(gj, Jet2.variable("y", work_deg))
        return np.array([resid.coeff(0, k) for k in range(order + 1)])
    resid = F.compose(Jet2.variable("x", work_deg), gj)
    return np.array([resid.coeff(k, 0) for k in range(order + 1)])


def invert_map(u: Jet2, v: Jet2) -> tuple[Jet2, Jet2]:
    """Jet inverse of the map (x,y) -> (u(x,y), v(x,y)).

    u, v must vanish at the origin and have an invertible linear part.
    Returns (s, t) with u(s(x,y), t(x,y)) = x and v(s, t) = y up to the
    common truncation degree (fixed-point iteration on the jet).
    """
    if u.coeff(0, 0) != 0.0 or v.coeff(0, 0) != 0.0:
        raise NonzeroConstantTerm("map must fix the origin")
    k = max(u.degree, v.degree)
    A = np.array([[u.coeff(1, 0), u.coeff(0, 1)], [v.coeff(1, 0), v.coeff(0, 1)]])
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if abs(det) < 1e-14 * max(1.0, np.abs(A).max() ** 2):
        raise ValueError("linear part is not invertible")
    Ainv = np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]]) / det
    X = Jet2.variable("x", k)
    Y = Jet2.variable("y", k)
    # start from the linear inverse, iterate s <- s - Ainv (u(s,t)-x, v(s,t)-y)
    s = Ainv[0, 0] * X + Ainv[0, 1] * Y
    t = Ainv[1, 0] * X + Ainv[1, 1] * Y
    for _ in range(k):
        ru = u.compose(s, t) - X
        rv = v.compose(s, t) - Y
        s = s - (Ainv[0, 0] * ru + Ainv[0, 1] * rv)
        t = t - (Ainv[1, 0] * ru + Ainv[1, 1] * rv)
    return s, t


# ------------------------------------------------------------- resultant ops
def resultant_quartic_cubic(u: float, v: float, w: float) -> tuple[float, float]:
    """Resultant of y^4 + u y^2 + v y + w and its derivative 4y^3 + 2uy + v.

    Returns (closed_form, sylvester) which agree up to rounding; the
    closed form is the quartic discriminant
    256 w^3 - 128 u^2 w^2 + 16 u^4 w + 144 u v^2 w - 27 v^4 - 4 u^3 v^2.
    """
    closed = (
        256.0 * w**3
        - 128.0 * u**2 * w**2
        + 16.0 * u**4 * w
        + 144.0 * u * v**2 * w
        - 27.0 * v**4
        - 4.0 * u**3 * v**2
    )
    return closed, sylvester_resultant_quartic_cubic(u, v, w)


def sylvester_resultant_quartic_cubic(u: float, v: float, w: float) -> float:
    """7x7 Sylvester determinant of y^4+uy^2+vy+w and 4y^3+2uy+v."""
    p = [1.0, 0.0, u, v, w]      # quartic, descending
    q = [4.0, 0.0, 2.0 * u, v]   # cubic, descending
    S = np.zeros((7, 7))
    for r in range(3):           # deg q rows of p
        S[r, r : r + 5] = p
    for r in range(4):           # deg p rows of q
        S[3 + r, r : r + 4] = q
    return float(np.linalg.det(S))
