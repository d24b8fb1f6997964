"""Bivariate fractal interpolation over a coloured triangle partition.

Each subtriangle ``D_n`` contributes the map

    w_n(x, y, z) = (L_n(x, y),  alpha_n z + h(L_n(x, y)) - alpha_n B_m(h, x, y))

where ``L_n`` sends the domain corner of colour c to the vertex of ``D_n``
with colour c, ``h`` is the piecewise-linear interpolant of the samples
over the whole domain and ``B_m(h, .)`` its Bernstein approximation on the
domain triangle (m = 1 or 2).  Since ``h o L_n`` is affine on the domain
it is stored as a plane ``f x + k y + j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .bernstein import QuadCoeffs2D, barycentric_many, bern2d_coeffs_deg1, bern2d_coeffs_deg2
from .errors import InvalidEpsilon, InvalidScaling, NotHyperbolic, OutOfDomain, UnsupportedDegree
from .fif1d import AttractorCloud, HyperbolicityReport, default_iters
from .trimesh import TriPartition, interpolate_linear, jacobian, locate_many

DEFAULT_ALPHA_2D = 0.001
SNAP_TOL = 1e-9


@dataclass(frozen=True)
class BivMap:
    L: AffineMap2D
    alpha: float
    plane: Tuple[float, float, float]      # (f, k, j): h(L(x, y)) = f x + k y + j

    def plane_at(self, x, y):
        f, k, j = self.plane
        return f * np.asarray(x) + k * np.asarray(y) + j


@dataclass(frozen=True)
class FifSystem2D:
    partition: TriPartition
    maps: Tuple[BivMap, ...]
    degree: int
    bern: QuadCoeffs2D                     # B_m(h, x, y) on the domain, cartesian form

    @property
    def alphas(self) -> np.ndarray:
        return np.array([w.alpha for w in self.maps])

    @property
    def jacobians(self) -> np.ndarray:
        return np.array([jacobian(w.L) for w in self.maps])

    def apply(self, n: int, pts, z):
        """Image of points ``(x, y, z)`` under ``w_n``; ``pts`` has shape (k, 2)."""
        w = self.maps[n]
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        z = np.asarray(z, dtype=float)
        x, y = pts[:, 0], pts[:, 1]
        znew = w.alpha * z + w.plane_at(x, y) - w.alpha * self.bern(x, y)
        return w.L(pts), znew

    def h(self, pts):
        return interpolate_linear(self.partition, pts)


# --------------------------------------------------------------------------
# construction
# --------------------------------------------------------------------------

def _broadcast_alphas(alpha, n):
    arr = np.atleast_1d(np.asarray(alpha, dtype=float))
    if arr.size == 1:
        arr = np.full(n, float(arr[0]))
    if arr.size != n:
        raise ValueError(f"expected {n} scaling factors, got {arr.size}")
    if np.any(np.abs(arr) >= 1.0):
        raise InvalidScaling("vertical scaling factors must satisfy |alpha| < 1")
    return arr


def bernstein_of_h(part: TriPartition, m: int) -> QuadCoeffs2D:
    """Cartesian coefficients of ``B_m(h, .)`` on the domain triangle."""
    dom = part.domain
    zc = part.z[list(part.corner_indices)]
    if m == 1:
        E, G, H = bern2d_coeffs_deg1(dom, zc)
        return QuadCoeffs2D(0.0, 0.0, 0.0, E, G, H)
    if m == 2:
        mids = interpolate_linear(part, np.asarray(dom.edge_midpoints()))
        return bern2d_coeffs_deg2(dom, zc, mids)
    raise UnsupportedDegree(f"bivariate systems support m = 1 or 2, got {m}")


def build_ifs_2d(part: TriPartition, alpha=DEFAULT_ALPHA_2D, m: int = 1) -> FifSystem2D:
    """Assemble one map per subtriangle; ``alpha`` is a scalar or a per-triangle list."""
    if part.z is None:
        raise ValueError("partition has no samples attached")
    if m not in (1, 2):
        raise UnsupportedDegree(f"bivariate systems support m = 1 or 2, got {m}")
    al = _broadcast_alphas(alpha, part.n_triangles)
    bern = bernstein_of_h(part, m)
    dom = part.domain
    dom_cols = part.corner_colors
    maps = []
    for n, L in enumerate(part.maps()):
        tri = part.triangles[n]
        cols = [int(c) for c in part.colors[tri]]
        # z of the colour-c vertex of D_n, attached to the colour-c domain corner
        z_for_corner = [part.z[tri[cols.index(c)]] for c in dom_cols]
        maps.append(BivMap(L=L, alpha=float(al[n]), plane=bern2d_coeffs_deg1(dom, z_for_corner)))
    return FifSystem2D(partition=part, maps=tuple(maps), degree=m, bern=bern)


# --------------------------------------------------------------------------
# hyperbolicity
# --------------------------------------------------------------------------

def bernstein_slopes_2d(sys: FifSystem2D) -> Tuple[float, float]:
    """Bounds on ``|dB/dx|`` and ``|dB/dy|`` over the domain."""
    b = sys.bern
    V = sys.partition.domain.vertices
    X = float(np.abs(V[:, 0]).max())
    Y = float(np.abs(V[:, 1]).max())
    return (abs(b.P) + 2.0 * abs(b.K) * X + abs(b.O) * Y,
            abs(b.T) + 2.0 * abs(b.M) * Y + abs(b.O) * X)


def _quotient(num, den):
    return math.inf if den == 0.0 else num / den


def check_hyperbolic_2d(sys: FifSystem2D, epsilon: Optional[float] = None) -> HyperbolicityReport:
    """Contraction certificate in the metric ``|dx| + |dy| + gamma |dz|``.

    ``gamma`` is the smaller of ``(min(1 - colsum_1) - eps) / max(|f_n| + |alpha_n| Bx)`` and
    ``(min(1 - colsum_2) - eps) / max(|k_n| + |alpha_n| By)``, where ``colsum_c``
    is the absolute column sum of ``L_n``'s linear part and ``Bx``, ``By`` bound
    the partial derivatives of ``B_m``.
    """
    lin = np.array([w.L.linear for w in sys.maps])          # (N, 2, 2)
    col1 = np.abs(lin[:, 0, 0]) + np.abs(lin[:, 1, 0])
    col2 = np.abs(lin[:, 0, 1]) + np.abs(lin[:, 1, 1])
    gap = float(min((1.0 - col1).min(), (1.0 - col2).min()))
    if gap <= 0.0 and epsilon is None:
        # some sub-map does not shrink a coordinate axis: no certificate in this metric
        per_map = np.maximum(col1, col2)
        return HyperbolicityReport(theta=0.0, ratio=float(per_map.max()), hyperbolic=False,
                                   epsilon=0.0, per_map=tuple(per_map.tolist()))
    if epsilon is None:
        epsilon = 0.5 * gap
    if not (0.0 < epsilon < gap):
        raise InvalidEpsilon(f"epsilon must lie in (0, {gap}), got {epsilon}")
    bx, by = bernstein_slopes_2d(sys)
    al = np.abs(sys.alphas)
    sx = np.array([abs(w.plane[0]) for w in sys.maps]) + al * bx
    sy = np.array([abs(w.plane[1]) for w in sys.maps]) + al * by
    gamma = min(_quotient(float((1.0 - col1).min()) - epsilon, float(sx.max())),
                _quotient(float((1.0 - col2).min()) - epsilon, float(sy.max())))
    if math.isinf(gamma):
        gamma = 1.0
    per_map = np.maximum.reduce([al, col1 + gamma * sx, col2 + gamma * sy])
    ratio = float(per_map.max())
    return HyperbolicityReport(theta=float(gamma), ratio=ratio,
                               hyperbolic=bool(ratio < 1.0 and gamma > 0.0),
                               epsilon=float(epsilon), per_map=tuple(per_map.tolist()))


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------

def _snap_to_domain(part: TriPartition, pts):
    """Clip barycentric weights to the domain; rounding in inverse maps pushes points just outside."""
    tri = part.domain
    bary = barycentric_many(tri, pts)
    if bary.min() < -SNAP_TOL:
        bad = pts[np.argmin(bary.min(axis=1))]
        raise OutOfDomain(f"point {tuple(float(c) for c in bad)} lies outside the domain")
    bary = np.clip(bary, 0.0, None)
    bary /= bary.sum(axis=1, keepdims=True)
    return bary @ tri.vertices


def preimage_corners(part: TriPartition) -> np.ndarray:
    """For each subtriangle, the domain corner matched to each of its vertices, shape (N, 3, 2)."""
    corner_of = {c: part.domain.vertices[k] for k, c in enumerate(part.corner_colors)}
    return np.array([[corner_of[int(c)] for c in part.colors[tri]] for tri in part.triangles])


def iteration_bound_2d(sys: FifSystem2D, iters: int) -> float:
    """Bound on ``|f_k - f|`` after ``iters`` steps, from the deviation ``|h - B_m|`` at the vertices and a grid."""
    amax = float(np.max(np.abs(sys.alphas)))
    if amax == 0.0:
        return 0.0
    part = sys.partition
    tri = part.domain
    s, t = np.meshgrid(np.linspace(0, 1, 41), np.linspace(0, 1, 41))
    keep = s + t <= 1.0
    V = tri.vertices
    grid = V[0] + np.outer(s[keep], V[1] - V[0]) + np.outer(t[keep], V[2] - V[0])
    pts = np.vstack([grid, part.vertices])
    dev = float(np.max(np.abs(sys.h(pts) - sys.bern(pts[:, 0], pts[:, 1]))))
    return amax ** iters / (1.0 - amax) * amax * dev


def eval_fif_2d(sys: FifSystem2D, v, iters: Optional[int] = None, return_bound: bool = False):
    """Evaluate the bivariate FIF at a point or an (n, 2) array of points.

    Unrolls ``iters`` applications of the self-referential equation,
    starting from ``h``.
    """
    if iters is None:
        iters = default_iters(sys.alphas)
    if iters < 1:
        raise ValueError("iters must be >= 1")
    v_arr = np.asarray(v, dtype=float)
    single = v_arr.ndim == 1
    pts = _snap_to_domain(sys.partition, np.atleast_2d(v_arr))
    part = sys.partition
    zt = part.z[part.triangles]                                   # (N, 3)
    pre = preimage_corners(part)                                  # (N, 3, 2)
    al = sys.alphas
    acc = np.zeros(len(pts))
    weight = np.ones(len(pts))
    for _ in range(iters):
        idx, bary = locate_many(part, pts)
        hv = np.einsum("nk,nk->n", bary, zt[idx])
        # L_n^{-1} through the barycentrics: vertex k of D_n comes from the domain
        # corner of the same colour, so partition vertices map to corners exactly
        bary = np.clip(bary, 0.0, None)
        bary /= bary.sum(axis=1, keepdims=True)
        u = np.einsum("nk,nkd->nd", bary, pre[idx])
        acc += weight * (hv - al[idx] * sys.bern(u[:, 0], u[:, 1]))
        weight = weight * al[idx]
        pts = u
    acc += weight * sys.h(pts)
    val = float(acc[0]) if single else acc
    if return_bound:
        return val, iteration_bound_2d(sys, iters)
    return val


# --------------------------------------------------------------------------
# chaos game
# --------------------------------------------------------------------------

def map_probabilities_2d(sys: FifSystem2D) -> np.ndarray:
    n = len(sys.maps)
    w = np.maximum(sys.jacobians, 0.01 / n)
    return w / w.sum()


def chaos_game_2d(sys: FifSystem2D, n_points: int, seed: int = 0,
                  burn_in: int = 100) -> AttractorCloud:
    """Random-iteration sample of the surface, starting from the first domain corner."""
    if not check_hyperbolic_2d(sys).hyperbolic:
        raise NotHyperbolic("IFS failed the contraction certificate")
    probs = map_probabilities_2d(sys)
    rng = np.random.default_rng(seed)
    choice = rng.choice(len(sys.maps), size=burn_in + n_points, p=probs)
    lin = np.array([w.L.linear for w in sys.maps])
    off = np.array([w.L.offset for w in sys.maps])
    al = sys.alphas
    planes = np.array([w.plane for w in sys.maps])
    c0 = sys.partition.corner_indices[0]
    x, y = sys.partition.vertices[c0]
    z = float(sys.partition.z[c0])
    b = sys.bern
    out = np.empty((n_points, 3))
    for t, n in enumerate(choice):
        f, k, j = planes[n]
        z = al[n] * z + f * x + k * y + j - al[n] * float(b(x, y))
        A = lin[n]
        x, y = (A[0, 0] * x + A[0, 1] * y + off[n, 0], A[1, 0] * x + A[1, 1] * y + off[n, 1])
        if t >= burn_in:
            out[t - burn_in] = (x, y, z)
    return AttractorCloud(points=out, seed=seed, burn_in=burn_in,
                          probabilities=tuple(probs.tolist()), degree=sys.degree)


# --------------------------------------------------------------------------
# continuity
# --------------------------------------------------------------------------

def shared_edges(part: TriPartition):
    """Edges bounded by exactly two subtriangles, as ``((i, j), n1, n2)``."""
    owners = {}
    for n, tri in enumerate(part.triangles):
        for a, b in ((0, 1), (1, 2), (0, 2)):
            key = tuple(sorted((int(tri[a]), int(tri[b]))))
            owners.setdefault(key, []).append(n)
    return [(e, ns[0], ns[1]) for e, ns in owners.items() if len(ns) == 2]


def value_via_map(sys: FifSystem2D, n: int, pts, iters: Optional[int] = None):
    """FIF at ``pts`` (inside ``D_n``) computed through map ``n`` specifically."""
    part = sys.partition
    w = sys.maps[n]
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    u = _snap_to_domain(part, w.L.inverse(pts))
    tri = part.triangles[n]
    V = part.vertices[tri]
    M = np.column_stack([V, np.ones(3)])
    bary = np.linalg.solve(M.T, np.column_stack([pts, np.ones(len(pts))]).T).T
    h_local = bary @ part.z[tri]
    inner = eval_fif_2d(sys, u, iters)
    return w.alpha * inner + h_local - w.alpha * sys.bern(u[:, 0], u[:, 1])


def edge_continuity_gap(sys: FifSystem2D, samples: int = 50, iters: Optional[int] = None) -> float:
    """Largest disagreement between the two neighbouring maps' values along shared edges."""
    part = sys.partition
    t = np.linspace(0.0, 1.0, samples)[:, None]
    gap = 0.0
    for (i, j), n1, n2 in shared_edges(part):
        pts = part.vertices[i] + t * (part.vertices[j] - part.vertices[i])
        d = np.abs(value_via_map(sys, n1, pts, iters) - value_via_map(sys, n2, pts, iters))
        gap = max(gap, float(d.max()))
    return gap
