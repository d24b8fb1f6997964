"""End-to-end acceptance checks with pinned tolerances.

Every check records a verdict that is summarised, one line per criterion,
at the end of the pytest run.
"""

from __future__ import annotations

import numpy as np
import pytest

from bernfractal.bernstein import (BernNodes2D, bern2d_coeffs_deg1, bern2d_coeffs_deg2,
                                   bern2d_eval, bern2d_integral, bern1d_integral, BernNodes1D,
                                   Interval, multi_indices)
from bernfractal.errors import InvalidSubdivision
from bernfractal.fif1d import DataSet1D, build_ifs_1d, check_hyperbolic_1d, eval_fif_1d
from bernfractal.fif2d import (build_ifs_2d, check_hyperbolic_2d, edge_continuity_gap,
                               eval_fif_2d)
from bernfractal.oracle import (adaptive_quad_1d, exact_poly_integral, triangle_quad,
                                weierstrass_integral)
from bernfractal.presets import FIELDS, SIGNALS, signal_dataset
from bernfractal.quad1d import integrate_fif_1d, integrate_fif_1d_deg1, integrate_fif_1d_deg2
from bernfractal.quad2d import integrate_fif_2d, integrate_fif_2d_deg1, integrate_fif_2d_deg2
from bernfractal.reproduce import alpha_sweep, alpha_for_target
from bernfractal.trimesh import attach_samples, partition, triangle_count

from conftest import VERDICTS

ALPHA_1D = 0.01
ALPHA_2D = 0.001
COS_SERIES_POINTS = (5, 9, 17, 31)


def verdict(n, part, ok, detail):
    VERDICTS.setdefault(n, []).append((part, bool(ok), detail))
    print(f"criterion {n} [{part}]: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def field_system(name, d, m=1, alpha=ALPHA_2D):
    P = FIELDS[name]
    return build_ifs_2d(attach_samples(partition(P.domain, d), P.fn), alpha, m)


def random_triangle(rng):
    while True:
        V = rng.uniform(-3, 3, (3, 2))
        e1, e2 = V[1] - V[0], V[2] - V[0]
        area = 0.5 * abs(e1[0] * e2[1] - e1[1] * e2[0])
        if area > 0.05 * max(np.sum((V - np.roll(V, 1, axis=0)) ** 2, axis=1)):
            from bernfractal.bernstein import Triangle
            return Triangle(*map(tuple, V))


# -- 1. reference integrals -------------------------------------------------

def test_criterion_1_reference_integrals():
    c_cos = weierstrass_integral(SIGNALS["cos-series"].spec, 1e-6)
    c_sin6 = weierstrass_integral(SIGNALS["sin-series"].spec, 1e-7)
    c_sin8 = weierstrass_integral(SIGNALS["sin-series-8"].spec, 1e-7)
    t1 = triangle_quad(FIELDS["exp-field"].fn, FIELDS["exp-field"].domain, 1e-8)
    t2 = triangle_quad(FIELDS["trig-field"].fn, FIELDS["trig-field"].domain, 1e-8)
    t3 = exact_poly_integral(FIELDS["matyas"].polynomial, FIELDS["matyas"].domain)
    t4 = exact_poly_integral(FIELDS["himmelblau"].polynomial, FIELDS["himmelblau"].domain)
    poly = adaptive_quad_1d(lambda t: t ** 2, (-1, 1), 1e-12)
    ok = (abs(c_cos - 2.00407) <= 2e-3 and abs(c_sin6 - 3.4) <= 1e-6 and abs(c_sin8 - 3.4) <= 1e-6
          and abs(t1 - 0.8502) <= 5e-4 and abs(t2 - 0.0672) <= 5e-4
          and abs(t3 - 2600) <= 1e-9 * 2600 and abs(t4 - 7625) <= 1e-9 * 7625
          and abs(poly - 2 / 3) <= 1e-12)
    verdict(1, "oracles", ok, f"cos-series {c_cos:.6f}, sin-series {c_sin6:.9f}, sin-series-8 {c_sin8:.9f}, "
                               f"exp-field {t1:.6f}, trig-field {t2:.6f}, matyas {t3:.9g}, "
                               f"himmelblau {t4:.9g}")


# -- 2. univariate quadrature -----------------------------------------------

def test_criterion_2_scaling_sweep_reaches_reference():
    data = signal_dataset(SIGNALS["sin-series"], 5)
    rows = alpha_sweep(data, 3.4, np.linspace(0.0, 0.1, 1001))
    best = min(rows, key=lambda r: r["abs_error"])
    solved = alpha_for_target(data, 3.4)
    verdict(2, "sin-series sweep", best["abs_error"] <= 1e-6,
            f"min error {best['abs_error']:.2e} at alpha={best['alpha']:.4f}; closed form alpha={solved:.6f}")


def test_criterion_2_error_trend_with_more_samples():
    # Equispaced samples alias the high-frequency terms, so the error is not monotone here.
    C = weierstrass_integral(SIGNALS["cos-series"].spec, 1e-6)
    errs = []
    for n in COS_SERIES_POINTS:
        sys = build_ifs_1d(signal_dataset(SIGNALS["cos-series"], n - 1), ALPHA_1D, 1)
        errs.append(abs(integrate_fif_1d(sys).fractal_value - C))
    monotone = all(b <= a for a, b in zip(errs, errs[1:]))
    ok = errs[-1] <= 1e-2 and monotone
    verdict(2, "cos-series trend", ok, "errors " + ", ".join(f"N={n}: {e:.3e}" for n, e in zip(COS_SERIES_POINTS, errs)))


# -- 3. bivariate quadrature ------------------------------------------------

def test_criterion_3_bivariate_quadrature():
    m1 = integrate_fif_2d(field_system("exp-field", 4)).fractal_value
    m2 = integrate_fif_2d(field_system("trig-field", 4)).fractal_value
    e4 = abs(integrate_fif_2d(field_system("matyas", 4)).fractal_value - 2600)
    e10 = abs(integrate_fif_2d(field_system("matyas", 10)).fractal_value - 2600)
    ok = abs(m1 - 0.8502) <= 0.02 and abs(m2 - 0.0672) <= 5e-3 and e10 < e4 and e4 <= 0.25 * 2600
    verdict(3, "fields", ok, f"exp-field M={m1:.5f}; trig-field M={m2:.6f}; "
                             f"matyas rel err {e4 / 2600:.1%} -> {e10 / 2600:.1%}")


# -- 4. zero-scaling degenerations ------------------------------------------

def test_criterion_4_zero_scaling():
    rng = np.random.default_rng(4)
    worst1 = worst2 = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 15))
        p = np.sort(rng.uniform(-2, 2, n))
        while np.any(np.diff(p) <= 1e-3):
            p = np.sort(rng.uniform(-2, 2, n))
        q = rng.uniform(-1, 1, n)
        m = int(rng.integers(1, 4))
        M = integrate_fif_1d(build_ifs_1d(DataSet1D(tuple(p), tuple(q)), 0.0, m)).fractal_value
        trap = float(np.sum(np.diff(p) * (q[:-1] + q[1:]) / 2))
        worst1 = max(worst1, abs(M - trap))
    for _ in range(200):
        tri = random_triangle(rng)
        part = partition(tri, int(rng.integers(3, 7)))
        part = attach_samples(part, rng.uniform(-1, 1, part.n_vertices))
        M = integrate_fif_2d(build_ifs_2d(part, 0.0, int(rng.integers(1, 3)))).fractal_value
        exact = float(np.sum(part.areas() * part.z[part.triangles].mean(axis=1)))
        worst2 = max(worst2, abs(M - exact))
    verdict(4, "alpha = 0", worst1 <= 1e-12 and worst2 <= 1e-12,
            f"max |M1 - trapezoid| {worst1:.1e}; max |M2 - piecewise linear| {worst2:.1e}")


# -- 5. interpolation and continuity ----------------------------------------

def test_criterion_5_interpolation():
    worst = 0.0
    for name in SIGNALS:
        for n in COS_SERIES_POINTS:
            data = signal_dataset(SIGNALS[name], n - 1)
            for m in (1, 2):
                vals = eval_fif_1d(build_ifs_1d(data, ALPHA_1D, m), np.asarray(data.p, dtype=float))
                worst = max(worst, float(np.max(np.abs(vals - np.asarray(data.q, dtype=float)))))
    for name in FIELDS:
        for d in (4, 10):
            for m in (1, 2):
                sys = field_system(name, d, m)
                vals = eval_fif_2d(sys, sys.partition.vertices)
                worst = max(worst, float(np.max(np.abs(vals - sys.partition.z))))
    verdict(5, "interpolation", worst <= 1e-9, f"max node residual {worst:.1e}")


@pytest.mark.parametrize("d", [3, 4])
def test_criterion_5_edge_continuity(d):
    gap = max(edge_continuity_gap(field_system(name, d, m), samples=50)
              for name in FIELDS for m in (1, 2))
    verdict(5, f"continuity d={d}", gap <= 1e-6, f"max gap {gap:.1e}")


def test_criterion_5_edge_continuity_smallest_lattice():
    # The d = 2 lattice cannot be tiled by the 7 triangles the count formula asks for.
    try:
        sys = field_system("exp-field", 2)
    except InvalidSubdivision as exc:
        verdict(5, "continuity d=2", False, f"partition unavailable: {exc}")
    else:
        gap = edge_continuity_gap(sys, samples=50)
        verdict(5, "continuity d=2", gap <= 1e-6, f"max gap {gap:.1e}")


# -- 6. hyperbolicity certificates ------------------------------------------

def _contraction_1d(sys, rep, rng):
    lo, hi = sys.interval.p1, sys.interval.pN
    qs = 3 * (1 + float(np.max(np.abs(np.asarray(sys.dataset.q, dtype=float)))))
    worst = 0.0
    for i in range(len(sys.maps)):
        X = np.column_stack([rng.uniform(lo, hi, 2000), rng.uniform(-qs, qs, 2000)])
        Y = np.column_stack([rng.uniform(lo, hi, 2000), rng.uniform(-qs, qs, 2000)])
        WX = np.column_stack(sys.apply(i, X[:, 0], X[:, 1]))
        WY = np.column_stack(sys.apply(i, Y[:, 0], Y[:, 1]))
        dist = lambda a, b: np.abs(a[:, 0] - b[:, 0]) + rep.theta * np.abs(a[:, 1] - b[:, 1])
        worst = max(worst, float(np.max(dist(WX, WY) / dist(X, Y))))
    return worst


def _contraction_2d(sys, rep, rng):
    tri = sys.partition.domain
    zs = 3 * (1 + float(np.max(np.abs(sys.partition.z))))
    worst = 0.0
    for n in range(len(sys.maps)):
        X = rng.dirichlet([1, 1, 1], 500) @ tri.vertices
        Y = rng.dirichlet([1, 1, 1], 500) @ tri.vertices
        zx, zy = rng.uniform(-zs, zs, 500), rng.uniform(-zs, zs, 500)
        WX, wzx = sys.apply(n, X, zx)
        WY, wzy = sys.apply(n, Y, zy)
        dist = lambda a, za, b, zb: np.abs(a - b).sum(axis=1) + rep.theta * np.abs(za - zb)
        worst = max(worst, float(np.max(dist(WX, wzx, WY, wzy) / dist(X, zx, Y, zy))))
    return worst


def test_criterion_6_hyperbolicity():
    rng = np.random.default_rng(6)
    ratios, slack = [], []
    for name in SIGNALS:
        for n in COS_SERIES_POINTS:
            for m in (1, 2):
                sys = build_ifs_1d(signal_dataset(SIGNALS[name], n - 1), ALPHA_1D, m)
                rep = check_hyperbolic_1d(sys)
                ratios.append(rep.ratio)
                slack.append(_contraction_1d(sys, rep, rng) - rep.ratio)
    for name in FIELDS:
        for d in (4, 10):
            for m in (1, 2):
                sys = field_system(name, d, m)
                rep = check_hyperbolic_2d(sys)
                ratios.append(rep.ratio)
                slack.append(_contraction_2d(sys, rep, rng) - rep.ratio)
    ok = max(ratios) < 1 and max(slack) <= 1e-9
    verdict(6, "certificates", ok, f"max certified ratio {max(ratios):.4f}; "
                                   f"max measured minus certified {max(slack):.2e}")


# -- 7. equivalence oracles -------------------------------------------------

def test_criterion_7_equivalences():
    rng = np.random.default_rng(7)
    form_err = integ_err = 0.0
    for _ in range(100):
        tri = random_triangle(rng)
        z = rng.uniform(-5, 5, 6)
        pts = rng.dirichlet([1, 1, 1], 20) @ tri.vertices
        E, G, H = bern2d_coeffs_deg1(tri, z[:3])
        n1 = BernNodes2D(1, {(1, 0, 0): z[0], (0, 1, 0): z[1], (0, 0, 1): z[2]})
        form_err = max(form_err, float(np.max(np.abs(E * pts[:, 0] + G * pts[:, 1] + H
                                                     - bern2d_eval(tri, n1, pts)))))
        q = bern2d_coeffs_deg2(tri, z[:3], z[3:])
        n2 = BernNodes2D(2, {(2, 0, 0): z[0], (0, 2, 0): z[1], (0, 0, 2): z[2],
                             (1, 1, 0): z[3], (1, 0, 1): z[4], (0, 1, 1): z[5]})
        form_err = max(form_err, float(np.max(np.abs(q(pts[:, 0], pts[:, 1]) - bern2d_eval(tri, n2, pts)))))
        m = int(rng.integers(1, 5))
        nodes = BernNodes2D(m, {ijk: float(rng.uniform(-5, 5)) for ijk in multi_indices(m)})
        ref = triangle_quad(lambda x, y: bern2d_eval(tri, nodes, np.column_stack([x.ravel(), y.ravel()]))
                            .reshape(x.shape), tri, 1e-12, max_level=4)
        integ_err = max(integ_err, abs(bern2d_integral(tri, nodes) - ref))
        iv = Interval(float(rng.uniform(-3, 0)), float(rng.uniform(0.5, 3)))
        vals = rng.uniform(-5, 5, m + 1)
        n1d = BernNodes1D(m, tuple(vals))
        from bernfractal.bernstein import bern1d_eval
        ref1 = adaptive_quad_1d(lambda t: bern1d_eval(iv, n1d, t), (iv.p1, iv.pN), 1e-12)
        integ_err = max(integ_err, abs(bern1d_integral(iv, n1d) - ref1))

    path_err = 0.0
    for name in SIGNALS:
        for n in COS_SERIES_POINTS:
            data = signal_dataset(SIGNALS[name], n - 1)
            for m, special in ((1, integrate_fif_1d_deg1), (2, integrate_fif_1d_deg2)):
                sys = build_ifs_1d(data, ALPHA_1D, m)
                g, s = integrate_fif_1d(sys).fractal_value, special(sys).fractal_value
                path_err = max(path_err, abs(g - s) / max(1.0, abs(g)))
    for name in FIELDS:
        for d in (4, 10):
            for m, special in ((1, integrate_fif_2d_deg1), (2, integrate_fif_2d_deg2)):
                sys = field_system(name, d, m)
                g, s = integrate_fif_2d(sys).fractal_value, special(sys).fractal_value
                path_err = max(path_err, abs(g - s) / max(1.0, abs(g)))
    ok = form_err <= 1e-9 and path_err <= 1e-12 and integ_err <= 1e-9
    verdict(7, "equivalences", ok, f"coefficient forms {form_err:.1e}; quadrature paths {path_err:.1e} "
                                   f"(relative); Bernstein integrals {integ_err:.1e}")


# -- 8. structure counts ----------------------------------------------------

def _counts_ok(d):
    part = partition(FIELDS["exp-field"].domain, d)
    colours = np.sort(part.colors[part.triangles], axis=1)
    return (part.n_vertices == d * (d + 1) + 1 and part.n_triangles == 2 * d * d - 2 * d + 3
            and bool(np.all(colours == [1, 2, 3])))


def test_criterion_8_structure_counts():
    ds = list(range(3, 13)) + [49]
    bad = [d for d in ds if not _counts_ok(d)]
    known = [(d, triangle_count(d)) for d in (4, 10, 49)]
    ok = not bad and known == [(4, 27), (10, 183), (49, 4707)]
    verdict(8, "d=3..12,49", ok, f"mismatches {bad or 'none'}; known pairs {known}")


def test_criterion_8_smallest_lattice():
    try:
        ok = _counts_ok(2)
        detail = "counts and colouring checked"
    except InvalidSubdivision as exc:
        ok, detail = False, f"partition unavailable: {exc}"
    verdict(8, "d=2", ok, detail)
