"""Bernstein polynomials on intervals and on triangles.

Interval forms use the classical basis

    C(m, v) (p - p1)^v (pN - p)^(m - v) / (pN - p1)^m

sampled at the uniform nodes ``p1 + v (pN - p1) / m``.  Triangle forms use
barycentric coordinates ``(t1, t2, t3)`` and the multinomial basis
``m! / (i! j! k!) t1^i t2^j t3^k``.

All functions are pure; evaluation routines accept a scalar or a numpy
array of abscissae (points, for the triangle variants).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, NamedTuple, Tuple

import numpy as np

from .errors import DegenerateTriangle, OutOfDomain, UnsupportedDegree

MAX_DEGREE = 16
DEGENERATE_TOL = 1e-12
INSIDE_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    p1: float
    pN: float

    def __post_init__(self):
        if not self.p1 < self.pN:
            raise ValueError(f"interval needs p1 < pN, got [{self.p1}, {self.pN}]")

    @property
    def length(self) -> float:
        return self.pN - self.p1

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.p1 + self.pN)

    def contains(self, p, tol: float = INSIDE_TOL):
        p = np.asarray(p, dtype=float)
        slack = tol * max(1.0, abs(self.p1), abs(self.pN))
        return (p >= self.p1 - slack) & (p <= self.pN + slack)


@dataclass(frozen=True)
class Triangle:
    """Non-degenerate triangle given by three cartesian vertices."""

    v1: Tuple[float, float]
    v2: Tuple[float, float]
    v3: Tuple[float, float]

    def __post_init__(self):
        for name in ("v1", "v2", "v3"):
            v = getattr(self, name)
            object.__setattr__(self, name, (float(v[0]), float(v[1])))
        if abs(self.delta) <= DEGENERATE_TOL:
            raise DegenerateTriangle(
                f"triangle {self.v1}, {self.v2}, {self.v3} has |delta| <= {DEGENERATE_TOL}")

    @property
    def delta(self) -> float:
        """Signed determinant of [[x1,x2,x3],[y1,y2,y3],[1,1,1]] (twice the signed area)."""
        (x1, y1), (x2, y2), (x3, y3) = self.v1, self.v2, self.v3
        return x1 * (y2 - y3) - x2 * (y1 - y3) + x3 * (y1 - y2)

    @property
    def area(self) -> float:
        return 0.5 * abs(self.delta)

    @property
    def vertices(self) -> np.ndarray:
        return np.array([self.v1, self.v2, self.v3])

    @property
    def centroid(self) -> Tuple[float, float]:
        c = self.vertices.mean(axis=0)
        return float(c[0]), float(c[1])

    def edge_midpoints(self):
        """Midpoints of the edges (v1,v2), (v1,v3), (v2,v3), in that order."""
        V = self.vertices
        return [tuple(0.5 * (V[a] + V[b])) for a, b in ((0, 1), (0, 2), (1, 2))]


class BaryCoord(NamedTuple):
    t1: float
    t2: float
    t3: float


@dataclass(frozen=True)
class BernNodes1D:
    m: int
    values: Tuple[float, ...]

    def __post_init__(self):
        _check_degree(self.m)
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) != self.m + 1:
            raise ValueError(f"degree {self.m} needs {self.m + 1} node values, got {len(self.values)}")


@dataclass(frozen=True)
class BernNodes2D:
    m: int
    values: Dict[Tuple[int, int, int], float] = field(hash=False)

    def __post_init__(self):
        _check_degree(self.m)
        expected = set(multi_indices(self.m))
        if set(self.values) != expected:
            raise ValueError(
                f"degree {self.m} needs exactly {len(expected)} entries indexed by i+j+k={self.m}")


@dataclass(frozen=True)
class QuadCoeffs2D:
    """Cartesian quadratic K x^2 + M y^2 + O xy + P x + T y + U."""

    K: float
    M: float
    O: float
    P: float
    T: float
    U: float

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return (self.K * x * x + self.M * y * y + self.O * x * y
                + self.P * x + self.T * y + self.U)

    def monomials(self) -> Dict[Tuple[int, int], float]:
        return {(2, 0): self.K, (0, 2): self.M, (1, 1): self.O,
                (1, 0): self.P, (0, 1): self.T, (0, 0): self.U}


def _check_degree(m):
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise UnsupportedDegree(f"degree must be an integer >= 1, got {m!r}")
    if m > MAX_DEGREE:
        raise UnsupportedDegree(f"degree {m} exceeds the supported maximum {MAX_DEGREE}")


def multi_indices(m):
    """All (i, j, k) with i + j + k = m, ordered by decreasing i then j.

    ``multi_indices(0)`` is ``[(0, 0, 0)]``.
    """
    return [(i, j, m - i - j) for i in range(m, -1, -1) for j in range(m - i, -1, -1)]


def multinomial(i, j, k) -> int:
    return math.factorial(i + j + k) // (math.factorial(i) * math.factorial(j) * math.factorial(k))


# --------------------------------------------------------------------------
# barycentric coordinates
# --------------------------------------------------------------------------

def barycentric_forms(tri: Triangle) -> np.ndarray:
    """Rows ``(a_j, b_j, c_j)`` with ``t_j = a_j x + b_j y + c_j``.

    Each row is the cofactor expansion of the determinant obtained by
    replacing vertex j with the free point (x, y), divided by delta.
    """
    (x1, y1), (x2, y2), (x3, y3) = tri.v1, tri.v2, tri.v3
    forms = np.array([
        [y2 - y3, x3 - x2, x2 * y3 - x3 * y2],
        [y3 - y1, x1 - x3, x3 * y1 - x1 * y3],
        [y1 - y2, x2 - x1, x1 * y2 - x2 * y1],
    ])
    return forms / tri.delta


def barycentric(tri: Triangle, v) -> BaryCoord:
    """Barycentric coordinates of a single point ``v`` with respect to ``tri``."""
    x, y = float(v[0]), float(v[1])
    t = barycentric_forms(tri) @ np.array([x, y, 1.0])
    return BaryCoord(float(t[0]), float(t[1]), float(t[2]))


def barycentric_many(tri: Triangle, pts) -> np.ndarray:
    """Vectorised barycentric coordinates, shape ``(n, 3)`` for ``pts`` of shape ``(n, 2)``."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    F = barycentric_forms(tri)
    return pts @ F[:, :2].T + F[:, 2]


# --------------------------------------------------------------------------
# interval forms
# --------------------------------------------------------------------------

def bern1d_nodes(interval: Interval, f: Callable[[float], float], m: int) -> BernNodes1D:
    """Sample ``f`` at the m+1 uniform nodes of ``interval``."""
    _check_degree(m)
    ps = [interval.p1 + v * interval.length / m for v in range(m + 1)]
    ps[-1] = interval.pN
    return BernNodes1D(m, tuple(float(f(p)) for p in ps))


def bern1d_basis(interval: Interval, m: int, p) -> np.ndarray:
    """Basis values, shape ``p.shape + (m + 1,)``."""
    p = np.asarray(p, dtype=float)
    u = (p - interval.p1) / interval.length
    w = (interval.pN - p) / interval.length
    v = np.arange(m + 1)
    binom = np.array([math.comb(m, k) for k in v], dtype=float)
    return binom * u[..., None] ** v * w[..., None] ** (m - v)


def bern1d_eval(interval: Interval, nodes: BernNodes1D, p):
    p_arr = np.asarray(p, dtype=float)
    if not np.all(interval.contains(p_arr)):
        raise OutOfDomain(f"abscissa outside [{interval.p1}, {interval.pN}]")
    out = bern1d_basis(interval, nodes.m, p_arr) @ np.asarray(nodes.values)
    return float(out) if out.ndim == 0 else out


def bern1d_coeffs_deg1(interval: Interval, q1: float, qN: float):
    """Slope and intercept of the degree-1 Bernstein form (the chord)."""
    p1, pN = interval.p1, interval.pN
    slope = (qN - q1) / (pN - p1)
    intercept = (pN * q1 - p1 * qN) / (pN - p1)
    return slope, intercept


def bern1d_coeffs_deg2(interval: Interval, q1: float, qmid: float, qN: float):
    """Monomial coefficients ``(c, d, e)`` of ``c p^2 + d p + e``.

    ``qmid`` is the sampled value at the midpoint of the interval.
    """
    p1, pN = interval.p1, interval.pN
    L2 = (pN - p1) ** 2
    c = (q1 + qN - 2.0 * qmid) / L2
    d = (2.0 * (p1 + pN) * qmid - 2.0 * (pN * q1 + p1 * qN)) / L2
    e = (pN ** 2 * q1 + p1 ** 2 * qN - 2.0 * p1 * pN * qmid) / L2
    return c, d, e


def bern1d_derivative_bound(interval: Interval, nodes: BernNodes1D) -> float:
    """Upper bound for ``max |B_m'|`` on the interval.

    Uses the derivative's own Bernstein coefficients
    ``m (f_{v+1} - f_v) / (pN - p1)`` and the convex-hull property.
    """
    vals = np.asarray(nodes.values)
    return float(nodes.m * np.max(np.abs(np.diff(vals))) / interval.length)


def bern1d_integral(interval: Interval, nodes: BernNodes1D) -> float:
    # every basis function integrates to (pN - p1) / (m + 1)
    return interval.length / (nodes.m + 1) * math.fsum(nodes.values)


# --------------------------------------------------------------------------
# triangle forms
# --------------------------------------------------------------------------

def bern2d_nodes(tri: Triangle, f: Callable[[float, float], float], m: int) -> BernNodes2D:
    """Sample ``f`` at the barycentric lattice points ``(i/m, j/m, k/m)``."""
    _check_degree(m)
    V = tri.vertices
    values = {}
    for (i, j, k) in multi_indices(m):
        pt = (i * V[0] + j * V[1] + k * V[2]) / m
        values[(i, j, k)] = float(f(pt[0], pt[1]))
    return BernNodes2D(m, values)


def bern2d_eval(tri: Triangle, nodes: BernNodes2D, v):
    """Evaluate the degree-m triangle Bernstein form at one point or an ``(n, 2)`` array."""
    v_arr = np.asarray(v, dtype=float)
    single = v_arr.ndim == 1
    t = barycentric_many(tri, v_arr)
    if np.any(t < -INSIDE_TOL):
        raise OutOfDomain("point outside the triangle")
    total = np.zeros(t.shape[0])
    for (i, j, k), f in nodes.values.items():
        total += f * multinomial(i, j, k) * t[:, 0] ** i * t[:, 1] ** j * t[:, 2] ** k
    return float(total[0]) if single else total


def bern2d_coeffs_deg1(tri_sub: Triangle, z) -> Tuple[float, float, float]:
    """Plane ``E x + G y + H`` through the three lifted vertices."""
    (x1, y1), (x2, y2), (x3, y3) = tri_sub.v1, tri_sub.v2, tri_sub.v3
    z1, z2, z3 = (float(c) for c in z)
    den = tri_sub.delta
    E = (z1 * (y2 - y3) + z2 * (y3 - y1) + z3 * (y1 - y2)) / den
    G = (z1 * (x3 - x2) + z2 * (x1 - x3) + z3 * (x2 - x1)) / den
    H = (z1 * (x2 * y3 - x3 * y2) + z2 * (x3 * y1 - x1 * y3) + z3 * (x1 * y2 - x2 * y1)) / den
    return E, G, H


def _mul_linear(a, b):
    """Product of linear forms (ax, ay, a0) * (bx, by, b0) as (K, M, O, P, T, U)."""
    return np.array([
        a[0] * b[0],
        a[1] * b[1],
        a[0] * b[1] + a[1] * b[0],
        a[0] * b[2] + a[2] * b[0],
        a[1] * b[2] + a[2] * b[1],
        a[2] * b[2],
    ])


def bern2d_coeffs_deg2(tri: Triangle, corner_z, mid_z) -> QuadCoeffs2D:
    """Cartesian coefficients of the degree-2 triangle Bernstein form.

    ``corner_z`` are the values at v1, v2, v3; ``mid_z`` the values at the
    midpoints of (v1,v2), (v1,v3), (v2,v3).  Cross terms carry weight
    ``2 * mid`` (the multinomial 2!/(1!1!0!)).
    """
    tau = barycentric_forms(tri)
    z1, z2, z3 = (float(c) for c in corner_z)
    m12, m13, m23 = (2.0 * float(c) for c in mid_z)
    coeffs = (z1 * _mul_linear(tau[0], tau[0])
              + z2 * _mul_linear(tau[1], tau[1])
              + z3 * _mul_linear(tau[2], tau[2])
              + m12 * _mul_linear(tau[0], tau[1])
              + m13 * _mul_linear(tau[0], tau[2])
              + m23 * _mul_linear(tau[1], tau[2]))
    return QuadCoeffs2D(*(float(c) for c in coeffs))


def bern2d_integral(tri: Triangle, nodes: BernNodes2D) -> float:
    m = nodes.m
    return 2.0 * tri.area / ((m + 1) * (m + 2)) * math.fsum(nodes.values.values())


def tri_monomial_integral_exact(tri: Triangle, i: int, j: int) -> Fraction:
    """Rational value of the integral of ``x^i y^j`` over ``tri`` (``i + j <= 4``).

    The monomial is expanded in barycentric coordinates and each term
    integrated with ``2A a! b! c! / (a + b + c + 2)!``.  Float vertices are
    converted to their exact rational values first.
    """
    if i < 0 or j < 0 or i + j > 4:
        raise UnsupportedDegree(f"monomial x^{i} y^{j} not supported (need 0 <= i+j <= 4)")
    xs = [Fraction(v[0]) for v in (tri.v1, tri.v2, tri.v3)]
    ys = [Fraction(v[1]) for v in (tri.v1, tri.v2, tri.v3)]
    det = xs[0] * (ys[1] - ys[2]) - xs[1] * (ys[0] - ys[2]) + xs[2] * (ys[0] - ys[1])
    n = i + j
    total = Fraction(0)
    for (a1, b1, c1) in multi_indices(i):
        cx = multinomial(a1, b1, c1) * xs[0] ** a1 * xs[1] ** b1 * xs[2] ** c1
        for (a2, b2, c2) in multi_indices(j):
            cy = multinomial(a2, b2, c2) * ys[0] ** a2 * ys[1] ** b2 * ys[2] ** c2
            a, b, c = a1 + a2, b1 + b2, c1 + c2
            w = Fraction(math.factorial(a) * math.factorial(b) * math.factorial(c),
                         math.factorial(n + 2))
            total += cx * cy * w
    return abs(det) * total


def tri_monomial_integral(tri: Triangle, i: int, j: int) -> float:
    """Exact integral of ``x^i y^j`` over ``tri``, rounded once to float."""
    return float(tri_monomial_integral_exact(tri, i, j))
