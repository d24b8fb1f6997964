"""Triangle-domain partitions with a proper 3-colouring.

Lattice
-------
For subdivision parameter ``d`` the domain (v1, v2 at the base, v3 the
apex) carries ``d`` rows of ``d + 1`` equally spaced points; row ``j``
runs between ``v1 + j/d (v3 - v1)`` and ``v2 + j/d (v3 - v2)``.  The apex
closes the set, giving ``d (d + 1) + 1`` vertices.

Connectivity
------------
Consecutive rows are joined by strips of ``2d`` triangles.  The top row is
closed by a cap of three triangles meeting at the apex:
``(col 0, col 1, apex)``, ``(col d-1, col d, apex)`` and
``(col 1, col d-1, apex)``, the last of which leaves the interior top-row
points as hanging nodes.  Total: ``2 d^2 - 2 d + 3`` triangles, ``d - 3``
fewer than a full triangulation of the lattice (one per hanging node).

Colouring
---------
Inside a strip, each quad's diagonal orientation fixes how colours
propagate; along a row, consecutive colours differ by a step of +1 or -1
(mod 3), and that step sequence is the same in every row.  Steps and the
per-strip diagonal orientation are chosen so that the cap is properly
coloured and the three domain corners receive colours 1, 2, 3.  For
``d = 1 (mod 3)`` the result is ``((k + 2 j) mod 3) + 1`` everywhere.  For
``d = 2`` a full triangulation has only 6 triangles, below the formula's
7, so :func:`partition` refuses it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .bernstein import INSIDE_TOL, Triangle
from .errors import (DegenerateTriangle, InvalidSubdivision, OutOfDomain, ParseError,
                     ShapeMismatch)


@dataclass(frozen=True)
class AffineMap2D:
    """``(x, y) -> (a11 x + a12 y + b1, a21 x + a22 y + b2)``."""

    a11: float
    a12: float
    a21: float
    a22: float
    b1: float
    b2: float

    @property
    def linear(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]])

    @property
    def offset(self) -> np.ndarray:
        return np.array([self.b1, self.b2])

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    def __call__(self, pts):
        pts = np.asarray(pts, dtype=float)
        return pts @ self.linear.T + self.offset

    def inverse(self, pts):
        pts = np.asarray(pts, dtype=float)
        return np.linalg.solve(self.linear, (pts - self.offset).T).T


@dataclass(frozen=True)
class TriPartition:
    domain: Triangle
    d: int
    vertices: np.ndarray = field(repr=False)
    triangles: np.ndarray = field(repr=False)
    colors: np.ndarray = field(repr=False)
    z: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def corner_indices(self) -> Tuple[int, int, int]:
        d = self.d
        return 0, d, d * (d + 1)

    @property
    def corner_colors(self) -> Tuple[int, int, int]:
        return tuple(int(self.colors[i]) for i in self.corner_indices)

    def subtriangle(self, n: int) -> Triangle:
        i, j, k = self.triangles[n]
        return Triangle(self.vertices[i], self.vertices[j], self.vertices[k])

    def subtriangle_vertices(self) -> np.ndarray:
        """Shape ``(N, 3, 2)``."""
        return self.vertices[self.triangles]

    def areas(self) -> np.ndarray:
        V = self.subtriangle_vertices()
        e1 = V[:, 1] - V[:, 0]
        e2 = V[:, 2] - V[:, 0]
        return 0.5 * np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    def maps(self) -> List[AffineMap2D]:
        """Colour-matched affine maps ``L_n`` from the domain onto each subtriangle."""
        cols = self.colors
        dom = self.domain.vertices
        dom_cols = self.corner_colors
        out = []
        for n, tri in enumerate(self.triangles):
            sub = self.vertices[tri]
            out.append(solve_map(dom, dom_cols, sub, tuple(int(cols[i]) for i in tri)))
        return out


# --------------------------------------------------------------------------
# construction
# --------------------------------------------------------------------------

def _step_sequence(d):
    """Row colour steps s_0..s_{d-1} (each +1 or -1)."""
    inner = d - 2
    # sum(inner steps) must be -1 mod 3 so that the cap closes; keep as many +1 as possible
    plus = next(p for p in range(inner, -1, -1) if (2 * p - inner) % 3 == 2)
    return [1] + [1] * plus + [-1] * (inner - plus) + [1]


def _strip_kinds(d):
    """Starting diagonal per strip: True for '/', False for '\\'."""
    strips = d - 1
    # '/' shifts the row's first colour by -1, '\\' by +1; the shifts must cancel mod 3
    slash = next(p for p in range(strips, -1, -1) if (2 * p - strips) % 3 == 0)
    return [True] * slash + [False] * (strips - slash)


def partition(tri: Triangle, d: int) -> TriPartition:
    """Partition ``tri`` into ``2 d^2 - 2 d + 3`` colour-consistent subtriangles."""
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidSubdivision(f"subdivision parameter must be an integer >= 2, got {d!r}")
    if d == 2:
        raise InvalidSubdivision(
            "d = 2: the 7-point lattice tiles into at most 6 triangles, "
            "fewer than the 2 d^2 - 2 d + 3 = 7 this construction produces")
    V = tri.vertices
    v1, v2, v3 = V
    idx = lambda j, k: j * (d + 1) + k
    apex = d * (d + 1)

    pts = np.empty((apex + 1, 2))
    for j in range(d):
        left = v1 + (j / d) * (v3 - v1)
        right = v2 + (j / d) * (v3 - v2)
        for k in range(d + 1):
            pts[idx(j, k)] = left + (k / d) * (right - left)
        pts[idx(j, d)] = right
    pts[apex] = v3

    steps = _step_sequence(d)
    kinds = _strip_kinds(d)
    raw = np.empty(apex + 1, dtype=int)
    first = 0
    for j in range(d):
        raw[idx(j, 0)] = first
        for k in range(d):
            raw[idx(j, k + 1)] = raw[idx(j, k)] + steps[k]
        if j < d - 1:
            first += -steps[0] if kinds[j] else steps[0]
    raw[apex] = raw[idx(d - 1, 0)] - steps[0]
    colors = raw % 3 + 1

    tris = []
    for j in range(d - 1):
        for k in range(d):
            A, B, C, D = idx(j, k), idx(j, k + 1), idx(j + 1, k), idx(j + 1, k + 1)
            slash = kinds[j] == (steps[k] == steps[0])
            if slash:
                tris += [(A, B, C), (B, D, C)]
            else:
                tris += [(A, B, D), (A, D, C)]
    top = d - 1
    tris += [(idx(top, 0), idx(top, 1), apex),
             (idx(top, d - 1), idx(top, d), apex),
             (idx(top, 1), idx(top, d - 1), apex)]
    tris = np.asarray(tris, dtype=int)

    part = TriPartition(domain=tri, d=int(d), vertices=pts, triangles=tris, colors=colors)
    bad = [n for n, t in enumerate(tris) if len(set(colors[t])) != 3]
    if bad or sorted(part.corner_colors) != [1, 2, 3]:
        raise AssertionError(f"colouring construction failed for d={d}: triangles {bad[:5]}")
    return part


def triangle_count(d: int) -> int:
    return 2 * d * d - 2 * d + 3


def attach_samples(part: TriPartition, f) -> TriPartition:
    """Return a copy of ``part`` with z-values from a field ``f(x, y)`` or an explicit list."""
    if callable(f):
        z = np.array([float(f(x, y)) for x, y in part.vertices])
    else:
        z = np.asarray(f, dtype=float).ravel()
        if z.shape[0] != part.n_vertices:
            raise ShapeMismatch(f"expected {part.n_vertices} z-values, got {z.shape[0]}")
    return replace(part, z=z)


# --------------------------------------------------------------------------
# maps
# --------------------------------------------------------------------------

def solve_map(domain, domain_colors: Sequence[int], sub, sub_colors: Sequence[int]) -> AffineMap2D:
    """Affine map sending the domain corner of colour c to the sub-vertex of colour c."""
    dom = np.asarray(domain.vertices if isinstance(domain, Triangle) else domain, dtype=float)
    sb = np.asarray(sub.vertices if isinstance(sub, Triangle) else sub, dtype=float)
    if sorted(domain_colors) != [1, 2, 3] or sorted(sub_colors) != [1, 2, 3]:
        raise ValueError("colour triples must be permutations of (1, 2, 3)")
    e1 = sb[1] - sb[0]
    e2 = sb[2] - sb[0]
    if abs(e1[0] * e2[1] - e1[1] * e2[0]) <= 1e-12 * max(1.0, np.abs(sb).max() ** 2):
        raise DegenerateTriangle("degenerate subtriangle")
    target = np.empty((3, 2))
    for c, src in zip(domain_colors, range(3)):
        target[src] = sb[list(sub_colors).index(c)]
    # rows: [x y 1] of the domain corners; solve for both output coordinates at once
    Mx = np.column_stack([dom, np.ones(3)])
    sol = np.linalg.solve(Mx, target)            # (3, 2): columns are (a_r1, a_r2, b_r)
    return AffineMap2D(a11=float(sol[0, 0]), a12=float(sol[1, 0]), a21=float(sol[0, 1]),
                       a22=float(sol[1, 1]), b1=float(sol[2, 0]), b2=float(sol[2, 1]))


def jacobian(L: AffineMap2D) -> float:
    """Change-of-variables factor ``|det|`` of the map's linear part."""
    return abs(L.det)


# --------------------------------------------------------------------------
# point location
# --------------------------------------------------------------------------

def _bary_all(part: TriPartition, pts: np.ndarray) -> np.ndarray:
    """Barycentric weights of every point against every subtriangle, shape (n, N, 3)."""
    V = part.subtriangle_vertices()
    x1, y1 = V[:, 0, 0], V[:, 0, 1]
    x2, y2 = V[:, 1, 0], V[:, 1, 1]
    x3, y3 = V[:, 2, 0], V[:, 2, 1]
    det = x1 * (y2 - y3) - x2 * (y1 - y3) + x3 * (y1 - y2)
    x = pts[:, 0:1]
    y = pts[:, 1:2]
    t1 = (x * (y2 - y3) + y * (x3 - x2) + (x2 * y3 - x3 * y2)) / det
    t2 = (x * (y3 - y1) + y * (x1 - x3) + (x3 * y1 - x1 * y3)) / det
    t3 = 1.0 - t1 - t2
    return np.stack([t1, t2, t3], axis=-1)


def locate_many(part: TriPartition, pts, chunk: int = 4096):
    """Vectorised :func:`locate`: returns ``(indices, bary)`` with shapes (n,), (n, 3)."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    n = pts.shape[0]
    out_idx = np.empty(n, dtype=int)
    out_bary = np.empty((n, 3))
    step = max(1, chunk * 64 // max(1, part.n_triangles))
    for s in range(0, n, step):
        block = pts[s:s + step]
        bary = _bary_all(part, block)
        inside = bary.min(axis=-1) >= -INSIDE_TOL
        found = inside.any(axis=1)
        if not found.all():
            bad = block[~found][0]
            raise OutOfDomain(f"point {tuple(bad)} lies outside the partitioned domain")
        first = inside.argmax(axis=1)
        out_idx[s:s + step] = first
        out_bary[s:s + step] = bary[np.arange(len(block)), first]
    return out_idx, out_bary


def locate(part: TriPartition, v):
    """Containing subtriangle of ``v`` (lowest index on shared edges) and its barycentrics."""
    idx, bary = locate_many(part, np.asarray(v, dtype=float)[None, :])
    return int(idx[0]), tuple(float(t) for t in bary[0])


def interpolate_linear(part: TriPartition, pts) -> np.ndarray:
    """Piecewise-linear interpolant ``h`` of the attached samples at ``pts``."""
    if part.z is None:
        raise ValueError("partition has no samples attached")
    idx, bary = locate_many(part, pts)
    return np.einsum("nk,nk->n", bary, part.z[part.triangles[idx]])


# --------------------------------------------------------------------------
# mesh CSV
# --------------------------------------------------------------------------

def dump_mesh_csv(part: TriPartition, path) -> None:
    """Write ``vertex,x,y,z,color`` rows, then ``triangle,i1,i2,i3`` rows.

    A leading ``domain,x1,y1,x2,y2,x3,y3,d`` row records the domain so the
    file can be read back without extra arguments.
    """
    z = part.z if part.z is not None else [float("nan")] * part.n_vertices
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["domain", *[repr(float(c)) for c in part.domain.vertices.ravel()], part.d])
        for (x, y), zz, c in zip(part.vertices, z, part.colors):
            w.writerow(["vertex", repr(float(x)), repr(float(y)), repr(float(zz)), int(c)])
        for t in part.triangles:
            w.writerow(["triangle", *[int(i) for i in t]])


def load_mesh_csv(path) -> TriPartition:
    verts, zs, cols, tris = [], [], [], []
    domain = None
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].startswith("#"):
                continue
            try:
                kind = row[0]
                if kind == "domain":
                    c = [float(v) for v in row[1:7]]
                    domain = (Triangle((c[0], c[1]), (c[2], c[3]), (c[4], c[5])), int(row[7]))
                elif kind == "vertex":
                    verts.append((float(row[1]), float(row[2])))
                    zs.append(float(row[3]))
                    cols.append(int(row[4]))
                elif kind == "triangle":
                    tris.append(tuple(int(v) for v in row[1:4]))
                else:
                    raise ValueError(f"unknown row type {kind!r}")
            except (ValueError, IndexError) as exc:
                raise ParseError(str(exc), line=lineno, path=path) from exc
    if domain is None:
        raise ParseError("missing domain row", path=path)
    z = np.array(zs)
    return TriPartition(domain=domain[0], d=domain[1], vertices=np.array(verts),
                        triangles=np.array(tris, dtype=int), colors=np.array(cols, dtype=int),
                        z=None if np.isnan(z).all() else z)
