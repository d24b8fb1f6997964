"""Independent reference integrals and test functions.

Nothing here touches the IFS machinery: these routines exist so the
closed-form fractal quadratures can be checked against something that
was computed another way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from .bernstein import Triangle, tri_monomial_integral_exact
from .errors import NoConvergence, UnsupportedDegree

DEFAULT_TRUNCATION = 20
MAX_DEPTH = 24


# --------------------------------------------------------------------------
# Weierstrass-type test functions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassSpec:
    """``poly(t) + amp(t) * sum_{k=1..K} trig(base^k pi t) / 2^k``.

    ``poly`` and ``amp`` hold polynomial coefficients in ascending order.
    """

    poly: Tuple[float, ...]
    amp: Tuple[float, ...]
    base: int
    kind: str = "cos"
    K: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if self.kind not in ("sin", "cos"):
            raise ValueError(f"kind must be 'sin' or 'cos', got {self.kind!r}")
        if self.K < 1:
            raise ValueError("truncation depth K must be >= 1")
        object.__setattr__(self, "poly", tuple(float(c) for c in self.poly))
        object.__setattr__(self, "amp", tuple(float(c) for c in self.amp))

    def amp_max(self, a: float = -1.0, b: float = 1.0) -> float:
        return _poly_abs_max(self.amp, a, b)

    @property
    def tail_bound(self) -> float:
        """Bound on the change caused by dropping every term beyond K."""
        return self.amp_max() * 2.0 ** (-self.K)


def _poly_abs_max(coeffs, a, b):
    c = np.asarray(coeffs, dtype=float)
    pts = [a, b]
    if len(c) > 2:
        crit = P.polyroots(P.polyder(c))
        pts += [r.real for r in np.atleast_1d(crit) if abs(r.imag) < 1e-12 and a <= r.real <= b]
    return float(max(abs(P.polyval(t, c)) for t in pts))


def _poly_total_variation(coeffs, a, b):
    c = np.asarray(coeffs, dtype=float)
    pts = [a, b]
    if len(c) > 2:
        crit = P.polyroots(P.polyder(c))
        pts += [r.real for r in np.atleast_1d(crit) if abs(r.imag) < 1e-12 and a < r.real < b]
    pts = sorted(pts)
    vals = P.polyval(np.array(pts), c)
    return float(np.sum(np.abs(np.diff(vals))))


def _trig_pi(kind, r):
    # r is a reduced argument in [0, 2); the value is trig(pi * r)
    return math.cos(math.pi * r) if kind == "cos" else math.sin(math.pi * r)


def weierstrass_eval(spec: WeierstrassSpec, t):
    """Evaluate the truncated series at ``t`` (scalar, Fraction or array).

    ``base^k * t`` is reduced modulo 2 in exact rational arithmetic before
    the trigonometric call, so large ``k`` does not destroy the argument.
    Floats are taken at their exact binary value.
    """
    if isinstance(t, np.ndarray):
        return np.array([weierstrass_eval(spec, float(x)) for x in t.ravel()]).reshape(t.shape)
    tq = Fraction(t)
    series = 0.0
    bk = 1
    for k in range(1, spec.K + 1):
        bk *= spec.base
        r = (bk * tq) % 2
        series += _trig_pi(spec.kind, float(r)) / 2.0 ** k
    tf = float(tq)
    return float(P.polyval(tf, spec.poly) + P.polyval(tf, spec.amp) * series)


def weierstrass_term_bound(spec: WeierstrassSpec, k: int, a: float = -1.0, b: float = 1.0) -> float:
    """Integration-by-parts bound on ``|int amp(t) trig(base^k pi t) dt| / 2^k``."""
    omega = spec.base ** k * math.pi
    ends = abs(P.polyval(a, spec.amp)) + abs(P.polyval(b, spec.amp))
    tv = _poly_total_variation(spec.amp, a, b)
    return (ends + tv) / (omega * 2.0 ** k)


def weierstrass_integral(spec: WeierstrassSpec, tol: float = 1e-6,
                         a: float = -1.0, b: float = 1.0) -> float:
    """Integral of the truncated series over ``[a, b]``.

    The polynomial part and each series term are integrated separately
    with :func:`adaptive_quad_1d`.  Terms are added until the summed
    integration-by-parts bound of all remaining terms falls below
    ``tol / 2``; the quadrature budget per term is ``tol / (2 K)``.
    """
    total = adaptive_quad_1d(lambda t: P.polyval(t, spec.poly), (a, b), tol / 4)
    ratio = 1.0 / (2.0 * spec.base)
    term_tol = tol / (4.0 * spec.K)
    for k in range(1, spec.K + 1):
        omega = spec.base ** k * math.pi
        fn = np.cos if spec.kind == "cos" else np.sin

        def term(t, omega=omega, k=k):
            return P.polyval(t, spec.amp) * fn(omega * t) / 2.0 ** k

        pieces = int(math.ceil(spec.base ** k * (b - a))) + 1
        total += adaptive_quad_1d(term, (a, b), term_tol, initial_pieces=pieces)
        if k == spec.K:
            break
        tail = weierstrass_term_bound(spec, k + 1, a, b) / (1.0 - ratio)
        if tail < tol / 2:
            break
    return float(total)


# --------------------------------------------------------------------------
# adaptive 1D quadrature
# --------------------------------------------------------------------------

_GL_ORDER = 10
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)


def _gauss(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * _GL_X
    return half * (np.asarray(f(x), dtype=float) @ _GL_W)


def adaptive_quad_1d(f: Callable, interval, tol: float, *, initial_pieces: int = 1,
                     max_depth: int = MAX_DEPTH, max_intervals: int = 4_000_000) -> float:
    """Globally adaptive Gauss-Legendre quadrature.

    Every active subinterval is integrated with a 10-point rule, once whole
    and once as two halves; the halves' value is accepted when the two
    differ by less than the subinterval's share of ``tol``.  Work is
    vectorised across all active subintervals, so ``f`` must accept numpy
    arrays.

    Raises
    ------
    NoConvergence
        When refinement exceeds ``max_depth`` levels or ``max_intervals``
        simultaneously active subintervals.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A, B = float(interval[0]), float(interval[1])
    if A == B:
        return 0.0
    edges = np.linspace(A, B, int(initial_pieces) + 1)
    a, b = edges[:-1], edges[1:]
    span = B - A
    accepted = []
    for _ in range(max_depth + 1):
        mid = 0.5 * (a + b)
        whole = _gauss(f, a, b)
        halves = _gauss(f, a, mid) + _gauss(f, mid, b)
        ok = np.abs(halves - whole) <= tol * np.abs(b - a) / abs(span)
        accepted.append(halves[ok])
        if ok.all():
            return float(math.fsum(np.concatenate(accepted)))
        a, b, mid = a[~ok], b[~ok], mid[~ok]
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
        if a.size > max_intervals:
            break
    raise NoConvergence(f"adaptive quadrature did not reach tol={tol} within {max_depth} levels")


# --------------------------------------------------------------------------
# triangle quadrature
# --------------------------------------------------------------------------

def _strang_fix_7():
    """Degree-5 symmetric 7-point rule on the reference triangle (barycentric, weights sum to 1)."""
    s15 = math.sqrt(15.0)
    a1 = (6.0 - s15) / 21.0
    a2 = (6.0 + s15) / 21.0
    w1 = (155.0 - s15) / 1200.0
    w2 = (155.0 + s15) / 1200.0
    pts = [(1 / 3, 1 / 3, 1 / 3)]
    wts = [9.0 / 40.0]
    for a, w in ((a1, w1), (a2, w2)):
        b = 1.0 - 2.0 * a
        pts += [(a, a, b), (a, b, a), (b, a, a)]
        wts += [w, w, w]
    return np.array(pts), np.array(wts)


_TRI_PTS, _TRI_WTS = _strang_fix_7()


def _uniform_subtriangles(n):
    """Reference-lattice sub-triangles of a level-n uniform split, as (n^2, 3, 2) (s, t) coords."""
    tris = []
    for i in range(n):
        for j in range(n - i):
            tris.append(((i, j), (i + 1, j), (i, j + 1)))
            if i + j < n - 1:
                tris.append(((i + 1, j), (i + 1, j + 1), (i, j + 1)))
    return np.asarray(tris, dtype=float) / n


def triangle_rule(f, tri: Triangle, n: int) -> float:
    """Apply the 7-point rule on each of the n^2 uniform sub-triangles."""
    sub = _uniform_subtriangles(n)                       # (T, 3, 2) in (s, t)
    V = tri.vertices
    E = np.stack([V[1] - V[0], V[2] - V[0]])             # (2, 2)
    corners = V[0] + sub @ E                             # (T, 3, 2) cartesian
    pts = np.einsum("qk,tkd->tqd", _TRI_PTS, corners)     # (T, 7, 2)
    vals = np.asarray(f(pts[..., 0], pts[..., 1]), dtype=float)
    return float(tri.area / (n * n) * np.sum(vals @ _TRI_WTS))


def triangle_quad(f: Callable, tri: Triangle, tol: float, max_level: int = 10) -> float:
    """Uniformly refined 7-point rule; stops when two successive levels agree to ``tol``.

    ``f(x, y)`` must accept numpy arrays.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    prev = triangle_rule(f, tri, 1)
    for level in range(1, max_level + 1):
        cur = triangle_rule(f, tri, 2 ** level)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    raise NoConvergence(f"triangle quadrature did not reach tol={tol} by level {max_level}")


# --------------------------------------------------------------------------
# exact polynomial integrals
# --------------------------------------------------------------------------

def exact_poly_integral(poly: Dict[Tuple[int, int], float], tri: Triangle) -> float:
    """Integral of ``sum c_ij x^i y^j`` (total degree <= 4) over ``tri``."""
    total = Fraction(0)
    for (i, j), c in poly.items():
        if i + j > 4:
            raise UnsupportedDegree(f"term x^{i} y^{j} exceeds total degree 4")
        total += Fraction(c) * tri_monomial_integral_exact(tri, i, j)
    return float(total)


def poly_eval(poly: Dict[Tuple[int, int], float], x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros(np.broadcast(x, y).shape)
    for (i, j), c in poly.items():
        out = out + c * x ** i * y ** j
    return out
