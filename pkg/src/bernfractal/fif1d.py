"""Univariate fractal interpolation with a Bernstein correction.

For data ``(p_i, q_i)``, i = 1..N, the IFS consists of the N-1 maps

    w_i(p, q) = (a_i p + b_i,  alpha_i q + A_i p + B_i - alpha_i B_m(g, p))

where ``g`` is the piecewise-linear interpolant of the data and
``B_m(g, .)`` its degree-m Bernstein polynomial over the whole interval.
The attractor is the graph of a continuous function interpolating the
data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from .bernstein import (BernNodes1D, Interval, bern1d_basis, bern1d_coeffs_deg1,
                        bern1d_coeffs_deg2, bern1d_derivative_bound)
from .errors import (InvalidEpsilon, InvalidScaling, NotHyperbolic, OutOfDomain,
                     TooFewPoints, UnsortedInput)

MAX_ITERS = 60


@dataclass(frozen=True)
class DataSet1D:
    p: Tuple[float, ...]
    q: Tuple[float, ...]

    def __post_init__(self):
        p = tuple(float(v) for v in self.p)
        q = tuple(float(v) for v in self.q)
        if len(p) != len(q):
            raise ValueError("p and q must have equal length")
        if len(p) < 2:
            raise TooFewPoints(f"need at least 2 data points, got {len(p)}")
        if any(b <= a for a, b in zip(p, p[1:])):
            raise UnsortedInput("abscissae must be strictly increasing")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_points(cls, points):
        points = list(points)
        return cls(tuple(pt[0] for pt in points), tuple(pt[1] for pt in points))

    @property
    def N(self) -> int:
        return len(self.p)

    @property
    def interval(self) -> Interval:
        return Interval(self.p[0], self.p[-1])

    def g(self, p):
        """Piecewise-linear interpolant of the data."""
        return np.interp(p, self.p, self.q)


@dataclass(frozen=True)
class UniMap:
    a: float
    b: float
    A: float
    B: float
    alpha: float
    correction: Tuple[float, ...]   # ascending monomial coefficients of alpha * B_m(g, p)

    def S(self, p):
        return self.a * np.asarray(p) + self.b

    def S_inv(self, p):
        return (np.asarray(p) - self.b) / self.a


@dataclass(frozen=True)
class FifSystem1D:
    dataset: DataSet1D
    maps: Tuple[UniMap, ...]
    degree: int
    bern_nodes: BernNodes1D

    @property
    def interval(self) -> Interval:
        return self.dataset.interval

    @property
    def alphas(self) -> np.ndarray:
        return np.array([w.alpha for w in self.maps])

    @property
    def a(self) -> np.ndarray:
        return np.array([w.a for w in self.maps])

    def bernstein(self, p):
        """``B_m(g, p)``, evaluated in Bernstein form."""
        return bern1d_basis(self.interval, self.degree, p) @ np.asarray(self.bern_nodes.values)

    def apply(self, i: int, p, q):
        """Image of ``(p, q)`` under ``w_i`` (0-based ``i``)."""
        w = self.maps[i]
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        return w.S(p), w.alpha * q + w.A * p + w.B - w.alpha * self.bernstein(p)

    def matrix_form(self, i: int):
        """``(linear 2x2, offset polynomial)`` for map ``i``.

        The offset's second component is a polynomial in ``p``, given by its
        ascending coefficients: ``B_i - alpha_i B_m(g, p)``.
        """
        w = self.maps[i]
        lin = np.array([[w.a, 0.0], [w.A, w.alpha]])
        off = P.polysub([w.B], list(w.correction))
        return lin, (w.b, tuple(float(c) for c in np.atleast_1d(off)))


@dataclass(frozen=True)
class HyperbolicityReport:
    theta: float
    ratio: float
    hyperbolic: bool
    epsilon: float
    per_map: Tuple[float, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class AttractorCloud:
    points: np.ndarray = field(repr=False)
    seed: int
    burn_in: int
    probabilities: Tuple[float, ...] = field(repr=False)
    degree: int

    def __len__(self):
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]


# --------------------------------------------------------------------------
# construction
# --------------------------------------------------------------------------

def _bernstein_monomials(interval: Interval, nodes: BernNodes1D):
    """Ascending monomial coefficients of the Bernstein form."""
    m = nodes.m
    L = interval.length
    out = np.zeros(m + 1)
    for v, f in enumerate(nodes.values):
        term = P.polymul(P.polypow([-interval.p1, 1.0], v), P.polypow([interval.pN, -1.0], m - v))
        out[: len(term)] += f * math.comb(m, v) * term / L ** m
    return out


def _broadcast_alphas(alphas, n):
    arr = np.atleast_1d(np.asarray(alphas, dtype=float))
    if arr.size == 1:
        arr = np.full(n, float(arr[0]))
    if arr.size != n:
        raise ValueError(f"expected {n} scaling factors, got {arr.size}")
    if np.any(np.abs(arr) >= 1.0):
        raise InvalidScaling("vertical scaling factors must satisfy |alpha| < 1")
    return arr


def build_ifs_1d(data: DataSet1D, alphas, m: int = 1) -> FifSystem1D:
    """Assemble the N-1 maps for ``data`` with scaling factors ``alphas`` and degree ``m``."""
    if data.N < 2:
        raise TooFewPoints("need at least 2 data points")
    al = _broadcast_alphas(alphas, data.N - 1)
    I = data.interval
    p1, pN, L = I.p1, I.pN, I.length
    q1, qN = data.q[0], data.q[-1]

    if m == 1:
        slope, icpt = bern1d_coeffs_deg1(I, q1, qN)
        mono = np.array([icpt, slope])
        nodes = BernNodes1D(1, (q1, qN))
    elif m == 2:
        qmid = float(data.g(I.midpoint))
        c, d, e = bern1d_coeffs_deg2(I, q1, qmid, qN)
        mono = np.array([e, d, c])
        nodes = BernNodes1D(2, (q1, qmid, qN))
    else:
        ps = [p1 + v * L / m for v in range(m + 1)]
        ps[-1] = pN
        nodes = BernNodes1D(m, tuple(float(data.g(x)) for x in ps))
        mono = _bernstein_monomials(I, nodes)

    maps = []
    for i in range(data.N - 1):
        pi, pj = data.p[i], data.p[i + 1]
        qi, qj = data.q[i], data.q[i + 1]
        a = (pj - pi) / L
        b = (pN * pi - p1 * pj) / L
        A = (qj - qi) / L
        B = (pN * qi - p1 * qj) / L
        maps.append(UniMap(a=a, b=b, A=A, B=B, alpha=float(al[i]),
                           correction=tuple(float(al[i] * c) for c in mono)))
    return FifSystem1D(dataset=data, maps=tuple(maps), degree=m, bern_nodes=nodes)


# --------------------------------------------------------------------------
# hyperbolicity
# --------------------------------------------------------------------------

def bernstein_lipschitz_1d(sys: FifSystem1D) -> float:
    """Lipschitz constant of ``B_m(g, .)`` used in the contraction certificate.

    Degree 1: ``|slope|``.  Degree 2: ``|d| + 2 |c| max(|p1|, |pN|)`` from
    the monomial form ``c p^2 + d p + e``.  Higher degrees: the
    convex-hull bound on the derivative's Bernstein coefficients.
    """
    I = sys.interval
    nodes = sys.bern_nodes
    if sys.degree == 1:
        return abs(bern1d_coeffs_deg1(I, nodes.values[0], nodes.values[1])[0])
    if sys.degree == 2:
        c, d, _ = bern1d_coeffs_deg2(I, *nodes.values)
        return abs(d) + 2.0 * abs(c) * max(abs(I.p1), abs(I.pN))
    return bern1d_derivative_bound(I, nodes)


def default_epsilon_1d(sys: FifSystem1D) -> float:
    return 0.5 * float(np.min(1.0 - np.abs(sys.a)))


def check_hyperbolic_1d(sys: FifSystem1D, epsilon: Optional[float] = None) -> HyperbolicityReport:
    """Contraction certificate in the metric ``|dp| + theta |dq|``.

    ``theta = (min(1 - |a_i|) - eps) / max(|A_i| + |alpha_i| Lip(B_m))`` and
    the reported ratio is ``max_i max(|a_i| + theta (|A_i| + |alpha_i| Lip), |alpha_i|)``.
    """
    a = np.abs(sys.a)
    gap = float(np.min(1.0 - a))
    if epsilon is None:
        epsilon = 0.5 * gap
    if not (0.0 < epsilon < gap):
        raise InvalidEpsilon(f"epsilon must lie in (0, {gap}), got {epsilon}")
    lip = bernstein_lipschitz_1d(sys)
    A = np.array([abs(w.A) for w in sys.maps])
    al = np.abs(sys.alphas)
    slopes = A + al * lip
    denom = float(slopes.max())
    theta = (gap - epsilon) / denom if denom > 0 else 1.0
    per_map = np.maximum(a + theta * slopes, al)
    ratio = float(per_map.max())
    return HyperbolicityReport(theta=float(theta), ratio=ratio,
                               hyperbolic=bool(ratio < 1.0 and theta > 0.0),
                               epsilon=float(epsilon), per_map=tuple(per_map.tolist()))


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------

def default_iters(alphas) -> int:
    amax = float(np.max(np.abs(alphas))) if len(alphas) else 0.0
    if amax == 0.0:
        return 1
    return int(min(MAX_ITERS, max(1, math.ceil(math.log(1e-10) / math.log(amax) - 1e-9))))


def iteration_bound(sys: FifSystem1D, iters: int) -> float:
    """A-posteriori bound on ``|psi_k - psi|`` after ``iters`` applications.

    ``(max|alpha|)^k / (1 - max|alpha|) * ||psi_1 - psi_0||``; the sup-norm
    of ``psi_1 - g`` is estimated on the data nodes plus a 4001-point grid.
    """
    amax = float(np.max(np.abs(sys.alphas)))
    if amax == 0.0:
        return 0.0
    I = sys.interval
    grid = np.union1d(np.linspace(I.p1, I.pN, 4001), sys.dataset.p)
    dev = float(np.max(np.abs(sys.dataset.g(grid) - sys.bernstein(grid))))
    return amax ** iters / (1.0 - amax) * amax * dev


def _interval_index(sys: FifSystem1D, p):
    nodes = np.asarray(sys.dataset.p)
    i = np.searchsorted(nodes, p, side="right") - 1
    return np.clip(i, 0, len(nodes) - 2)


def eval_fif_1d(sys: FifSystem1D, p, iters: Optional[int] = None, return_bound: bool = False):
    """Evaluate the FIF by ``iters`` applications of the Read-Bajraktarevic operator.

    Starts from ``g``.  Accepts a scalar or an array.  With
    ``return_bound=True`` returns ``(value, bound)``.
    """
    if iters is None:
        iters = default_iters(sys.alphas)
    if iters < 1:
        raise ValueError("iters must be >= 1")
    I = sys.interval
    p_arr = np.asarray(p, dtype=float)
    if not np.all(I.contains(p_arr)):
        raise OutOfDomain(f"abscissa outside [{I.p1}, {I.pN}]")
    x = np.clip(np.atleast_1d(p_arr).astype(float), I.p1, I.pN)
    nodes = np.asarray(sys.dataset.p)
    a = sys.a
    al = sys.alphas
    acc = np.zeros_like(x)
    weight = np.ones_like(x)
    g = sys.dataset.g
    for _ in range(iters):
        i = _interval_index(sys, x)
        lo, hi = nodes[i], nodes[i + 1]
        # measure from the nearer end so data nodes land exactly on p1 or pN
        u = np.where(x - lo <= hi - x, I.p1 + (x - lo) / a[i], I.pN - (hi - x) / a[i])
        u = np.clip(u, I.p1, I.pN)
        acc += weight * (g(x) - al[i] * sys.bernstein(u))
        weight = weight * al[i]
        x = u
    acc += weight * g(x)
    val = float(acc[0]) if p_arr.ndim == 0 else acc.reshape(p_arr.shape)
    if return_bound:
        return val, iteration_bound(sys, iters)
    return val


# --------------------------------------------------------------------------
# chaos game
# --------------------------------------------------------------------------

def map_probabilities_1d(sys: FifSystem1D) -> np.ndarray:
    n = len(sys.maps)
    w = np.maximum(np.abs(sys.a), 0.01 / n)
    return w / w.sum()


def chaos_game_1d(sys: FifSystem1D, n_points: int, seed: int = 0,
                  burn_in: int = 100) -> AttractorCloud:
    """Random-iteration sample of the attractor, starting from ``(p_1, q_1)``."""
    if not check_hyperbolic_1d(sys).hyperbolic:
        raise NotHyperbolic("IFS failed the contraction certificate")
    probs = map_probabilities_1d(sys)
    rng = np.random.default_rng(seed)
    total = burn_in + n_points
    choice = rng.choice(len(sys.maps), size=total, p=probs)
    pts = np.empty((n_points, 2))
    p, q = sys.dataset.p[0], sys.dataset.q[0]
    for t, i in enumerate(choice):
        p, q = sys.apply(int(i), p, q)
        p, q = float(p), float(q)
        if t >= burn_in:
            pts[t - burn_in] = (p, q)
    return AttractorCloud(points=pts, seed=seed, burn_in=burn_in,
                          probabilities=tuple(probs.tolist()), degree=sys.degree)
