"""Comparison tables for the bundled test problems.

Every row carries the independent reference value next to the fractal
quadrature so that any disagreement can be traced to one side or the
other.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

import numpy as np

from .bernstein import bern1d_integral
from .fif1d import build_ifs_1d
from .fif2d import DEFAULT_ALPHA_2D, build_ifs_2d, check_hyperbolic_2d
from .oracle import exact_poly_integral, triangle_quad, weierstrass_integral
from .presets import FIELDS, SIGNALS, signal_dataset
from .quad1d import integrate_fif_1d
from .quad2d import integrate_fif_2d
from .trimesh import attach_samples, partition

DEFAULT_ALPHA_1D = 0.01
SIGNAL_POINTS = {"cos-series": (5, 9, 17, 31), "sin-series": (6,), "sin-series-8": (6,)}
FIELD_DS = {"exp-field": (4, 10), "trig-field": (4, 10), "matyas": (4, 10), "himmelblau": (4, 10)}
TARGETS = tuple(SIGNALS) + tuple(FIELDS)


def thread_count() -> int:
    """Worker cap from ``FRACTAL_BERN_THREADS`` (0 or unset means one per CPU)."""
    raw = os.environ.get("FRACTAL_BERN_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"FRACTAL_BERN_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("FRACTAL_BERN_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def signal_reference(name: str, K: int = 20, tol: float = 1e-6) -> float:
    spec = SIGNALS[name].spec
    if K != spec.K:
        spec = type(spec)(spec.poly, spec.amp, spec.base, spec.kind, K)
    return weierstrass_integral(spec, tol)


def field_reference(name: str, tol: float = 1e-7) -> float:
    prob = FIELDS[name]
    if prob.polynomial is not None:
        return exact_poly_integral(prob.polynomial, prob.domain)
    return triangle_quad(prob.fn, prob.domain, tol)


def alpha_for_target(data, target: float, m: int = 1) -> float:
    """Uniform scaling that makes the fractal integral hit ``target`` exactly.

    With uniform ``alpha`` and ``sum a_i = 1`` the integral is
    ``(T - alpha J) / (1 - alpha)``; solving for ``alpha`` gives
    ``(T - target) / (J - target)``.
    """
    sys = build_ifs_1d(data, 0.0, m)
    T = integrate_fif_1d(sys).fractal_value
    J = bern1d_integral(sys.interval, sys.bern_nodes)
    return (T - target) / (J - target)


def alpha_sweep(data, target: float, alphas: Sequence[float], m: int = 1) -> List[Dict]:
    rows = []
    for a in alphas:
        M = integrate_fif_1d(build_ifs_1d(data, float(a), m)).fractal_value
        rows.append({"alpha": float(a), "M": M, "abs_error": abs(M - target)})
    return rows


def reproduce_signal(name: str, alpha: float = DEFAULT_ALPHA_1D, K: int = 20,
                     points: Optional[Sequence[int]] = None, sweep: bool = False,
                     tol: float = 1e-6):
    """Rows ``(N, n_pieces, I_oracle, M_deg1, error_deg1, M_deg2, error_deg2)``."""
    C = signal_reference(name, K, tol)
    rows = []
    for N in points or SIGNAL_POINTS[name]:
        data = signal_dataset(SIGNALS[name], N - 1, K)
        row = {"N": N, "n_pieces": N - 1, "I_oracle": C}
        for m in (1, 2):
            M = integrate_fif_1d(build_ifs_1d(data, alpha, m)).fractal_value
            row[f"M_deg{m}"] = M
            row[f"error_deg{m}"] = M - C
        rows.append(row)
    header = {"target": name, "alpha": alpha, "K": K, "oracle_tol": tol,
              "benchmark_C": SIGNALS[name].integral}
    extra = None
    if sweep:
        data = signal_dataset(SIGNALS[name], SIGNAL_POINTS[name][-1] - 1, K)
        grid = np.linspace(0.0, 0.1, 1001)
        swept = alpha_sweep(data, SIGNALS[name].integral, grid)
        best = min(swept, key=lambda r: r["abs_error"])
        exact = alpha_for_target(data, SIGNALS[name].integral)
        extra = {"best_grid_alpha": best["alpha"], "best_grid_error": best["abs_error"],
                 "solved_alpha": exact, "sweep": swept}
        header["best_alpha"] = best["alpha"]
        header["solved_alpha"] = exact
    return rows, header, extra


def _field_row(name, d, alpha, I):
    prob = FIELDS[name]
    part = attach_samples(partition(prob.domain, d), prob.fn)
    row = {"d": d, "N": part.n_triangles, "I_oracle": I}
    for m in (1, 2):
        sys = build_ifs_2d(part, alpha, m)
        M = integrate_fif_2d(sys).fractal_value
        row[f"M_deg{m}"] = M
        row[f"error_deg{m}"] = M - I
        row[f"ratio_deg{m}"] = check_hyperbolic_2d(sys).ratio
    pub = prob.benchmark.get(d)
    if pub is not None:
        row["benchmark_M_deg1"], row["benchmark_M_deg2"] = pub[1], pub[2]
    return row


def reproduce_table(name: str, alpha: float = DEFAULT_ALPHA_2D, ds: Optional[Sequence[int]] = None,
                    include_large: bool = False, tol: float = 1e-7):
    """Rows ``(d, N, I_oracle, M_deg1, error_deg1, M_deg2, error_deg2, ...)``."""
    ds = list(ds or FIELD_DS[name])
    if include_large and 49 not in ds:
        ds.append(49)
    I = field_reference(name, tol)
    with ThreadPoolExecutor(max_workers=min(thread_count(), len(ds))) as pool:
        rows = list(pool.map(lambda d: _field_row(name, d, alpha, I), ds))
    header = {"target": name, "alpha": alpha, "epsilon": "default (half the slack)",
              "benchmark_I": FIELDS[name].integral}
    return rows, header


def reproduce(target: str, **kw):
    if target in SIGNALS:
        return reproduce_signal(target, **kw)
    if target in FIELDS:
        rows, header = reproduce_table(target, **kw)
        return rows, header, None
    raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
