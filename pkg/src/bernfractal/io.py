"""Reading datasets and writing attractors and reports."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .bernstein import Triangle
from .errors import ParseError, UnsortedInput, VertexMismatch
from .fif1d import AttractorCloud, DataSet1D
from .trimesh import TriPartition, attach_samples, load_mesh_csv, partition

MATCH_TOL = 1e-6
SVG_W, SVG_H = 800, 600


def _rows(path):
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            yield lineno, row


def _floats(row, n, lineno, path):
    if len(row) < n:
        raise ParseError(f"expected {n} columns, got {len(row)}", line=lineno, path=path)
    try:
        return [float(v) for v in row[:n]]
    except ValueError as exc:
        raise ParseError(str(exc), line=lineno, path=path) from exc


def _is_header(row, n):
    try:
        [float(v) for v in row[:n]]
        return False
    except ValueError:
        return True


def read_dataset_1d(path) -> DataSet1D:
    """Read ``p,q`` rows; an optional first header row is skipped."""
    pts = []
    for lineno, row in _rows(path):
        if not pts and _is_header(row, 2) and lineno == 1:
            continue
        pts.append(_floats(row, 2, lineno, path))
    if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
        raise UnsortedInput(f"{path}: abscissae must be strictly increasing")
    return DataSet1D.from_points(pts)


def read_scatter_2d(path, domain: Triangle, d: int, tol: float = MATCH_TOL) -> TriPartition:
    """Attach ``x,y,z`` rows to the lattice of ``partition(domain, d)``.

    Every lattice vertex must be matched by exactly one row within ``tol``
    (max-norm).  Raise ``tol`` for coordinates that were printed rounded.
    """
    part = partition(domain, d)
    rows = []
    for lineno, row in _rows(path):
        if not rows and lineno == 1 and _is_header(row, 3):
            continue
        rows.append(_floats(row, 3, lineno, path))
    data = np.asarray(rows, dtype=float).reshape(-1, 3)
    if len(data) != part.n_vertices:
        raise VertexMismatch(f"{path}: {len(data)} rows for {part.n_vertices} lattice vertices")
    z = np.empty(part.n_vertices)
    used = np.zeros(len(data), dtype=bool)
    for i, v in enumerate(part.vertices):
        dist = np.abs(data[:, :2] - v).max(axis=1)
        k = int(np.argmin(dist))
        if dist[k] > tol or used[k]:
            raise VertexMismatch(f"{path}: no unique row for lattice vertex {tuple(v)}")
        used[k] = True
        z[i] = data[k, 2]
    return attach_samples(part, z)


def ingest_dataset(path, mode: str = "1d", domain: Optional[Triangle] = None,
                   d: Optional[int] = None, tol: float = MATCH_TOL) -> Union[DataSet1D, TriPartition]:
    """Load a 1D ``p,q`` file or a 2D mesh / scatter file.

    A 2D file whose first field is ``domain`` is read as a mesh dump;
    anything else is treated as ``x,y,z`` scatter and needs ``domain`` and ``d``.
    """
    if mode == "1d":
        return read_dataset_1d(path)
    if mode != "2d":
        raise ValueError(f"mode must be '1d' or '2d', got {mode!r}")
    with open(path, newline="") as fh:
        first = fh.readline()
    if first.startswith("domain"):
        return load_mesh_csv(path)
    if domain is None or d is None:
        raise ValueError("scatter input needs the domain triangle and subdivision d")
    return read_scatter_2d(path, domain, d, tol)


# --------------------------------------------------------------------------
# attractor export
# --------------------------------------------------------------------------

def _svg_panel(xs, ys, x0, y0, w, h, pad=20):
    out = [f'<rect x="{x0}" y="{y0}" width="{w}" height="{h}" fill="none" stroke="#999"/>']
    if len(xs) == 0:
        return out
    lo_x, hi_x = float(xs.min()), float(xs.max())
    lo_y, hi_y = float(ys.min()), float(ys.max())
    sx = (w - 2 * pad) / (hi_x - lo_x or 1.0)
    sy = (h - 2 * pad) / (hi_y - lo_y or 1.0)
    for x, y in zip(xs, ys):
        cx = x0 + pad + (x - lo_x) * sx
        cy = y0 + h - pad - (y - lo_y) * sy
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="0.8"/>')
    return out


def attractor_svg(cloud: AttractorCloud) -> str:
    pts = cloud.points
    body = []
    if pts.shape[1] == 2:
        body += _svg_panel(pts[:, 0], pts[:, 1], 0, 0, SVG_W, SVG_H)
    else:
        half = SVG_W // 2
        body += _svg_panel(pts[:, 0], pts[:, 2], 0, 0, half, SVG_H)
        body += _svg_panel(pts[:, 1], pts[:, 2], half, 0, half, SVG_H)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_W} {SVG_H}" '
            f'width="{SVG_W}" height="{SVG_H}">\n<g fill="#1f4e79">\n'
            + "\n".join(body) + "\n</g>\n</svg>\n")


def export_attractor(cloud: AttractorCloud, path, fmt: Optional[str] = None) -> Path:
    """Write the cloud as CSV (full precision), JSON or an SVG scatter."""
    path = Path(path)
    fmt = (fmt or path.suffix.lstrip(".") or "csv").lower()
    pts = np.asarray(cloud.points, dtype=float)
    cols = ["p", "q"] if pts.shape[1] == 2 else ["x", "y", "z"]
    try:
        if fmt == "csv":
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(cols)
                for row in pts:
                    w.writerow([repr(float(v)) for v in row])
        elif fmt == "json":
            doc = {"columns": cols, "seed": cloud.seed, "burn_in": cloud.burn_in,
                   "degree": cloud.degree, "points": pts.tolist()}
            path.write_text(json.dumps(doc))
        elif fmt == "svg":
            if len(pts) == 0:
                raise ValueError("cannot render an empty cloud as SVG")
            path.write_text(attractor_svg(cloud))
        else:
            raise ValueError(f"unknown format {fmt!r}")
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    return path


def read_attractor_csv(path) -> np.ndarray:
    rows = [list(map(float, r)) for i, r in _rows(path) if i > 1]
    return np.asarray(rows, dtype=float)


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

def write_table(rows, path, header: Optional[dict] = None, fmt: Optional[str] = None) -> Path:
    """Write a list of dict rows as CSV (with ``#`` provenance lines) or JSON."""
    path = Path(path)
    fmt = (fmt or path.suffix.lstrip(".") or "csv").lower()
    header = header or {}
    if fmt == "json":
        path.write_text(json.dumps({"provenance": header, "rows": rows}, indent=2) + "\n")
        return path
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    cols = list(rows[0]) if rows else []
    with open(path, "w", newline="") as fh:
        for k, v in header.items():
            fh.write(f"# {k}: {v}\n")
        w = csv.writer(fh)
        w.writerow(cols)
        for r in rows:
            w.writerow([repr(float(v)) if isinstance(v, float) else v for v in (r[c] for c in cols)])
    return path
