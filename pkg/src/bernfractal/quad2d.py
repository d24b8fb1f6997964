"""Closed-form double integral of a bivariate Bernstein FIF.

Integrating the self-referential equation over the domain and changing
variables on each subtriangle gives

    M = [sum d_n II h(L_n) - sum d_n alpha_n II B_m(h)] / (1 - sum d_n alpha_n)

with ``d_n = |det L_n|`` and all integrals taken over the domain triangle.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .bernstein import tri_monomial_integral
from .errors import SingularDenominator, UnsupportedDegree
from .fif2d import FifSystem2D
from .quad1d import SINGULAR_TOL, QuadReport


def _denominator(sys: FifSystem2D) -> float:
    den = 1.0 - float(np.dot(sys.jacobians, sys.alphas))
    if abs(den) <= SINGULAR_TOL:
        raise SingularDenominator(f"1 - sum(delta_n alpha_n) = {den:.3e} is numerically zero")
    return den


def _report(sys, value, den, oracle):
    rep = QuadReport(fractal_value=float(value), denominator=den, degree=sys.degree,
                     n_pieces=len(sys.maps))
    return rep if oracle is None else rep.with_oracle(oracle)


def bernstein_integral_2d(sys: FifSystem2D) -> float:
    """``II B_m(h)`` over the domain from exact monomial integrals."""
    tri = sys.partition.domain
    return math.fsum(c * tri_monomial_integral(tri, i, j)
                     for (i, j), c in sys.bern.monomials().items() if c != 0.0)


def integrate_fif_2d(sys: FifSystem2D, oracle: Optional[float] = None) -> QuadReport:
    """Fractal double integral for either degree."""
    den = _denominator(sys)
    tri = sys.partition.domain
    cx, cy = tri.centroid
    delta = sys.jacobians
    planes = np.array([w.plane for w in sys.maps])
    plane_int = tri.area * (planes[:, 0] * cx + planes[:, 1] * cy + planes[:, 2])
    num = math.fsum(delta * plane_int) - float(np.dot(delta, sys.alphas)) * bernstein_integral_2d(sys)
    return _report(sys, num / den, den, oracle)


def _monomial_integrals(sys):
    tri = sys.partition.domain
    return {ij: tri_monomial_integral(tri, *ij)
            for ij in ((0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1))}


def integrate_fif_2d_deg1(sys: FifSystem2D, oracle: Optional[float] = None) -> QuadReport:
    """Coefficient formula for ``m = 1``: ``B_1 = E x + G y + H``."""
    if sys.degree != 1:
        raise UnsupportedDegree("system was not built with degree 1")
    den = _denominator(sys)
    I = _monomial_integrals(sys)
    E, G, H = sys.bern.P, sys.bern.T, sys.bern.U
    total = 0.0
    for w, dn in zip(sys.maps, sys.jacobians):
        f, k, j = w.plane
        a = w.alpha
        total += dn * ((f - a * E) * I[1, 0] + (k - a * G) * I[0, 1] + (j - a * H) * I[0, 0])
    return _report(sys, total / den, den, oracle)


def integrate_fif_2d_deg2(sys: FifSystem2D, oracle: Optional[float] = None) -> QuadReport:
    """Coefficient formula for ``m = 2``: ``B_2 = K x^2 + M y^2 + O xy + P x + T y + U``."""
    if sys.degree != 2:
        raise UnsupportedDegree("system was not built with degree 2")
    den = _denominator(sys)
    I = _monomial_integrals(sys)
    b = sys.bern
    total = 0.0
    for w, dn in zip(sys.maps, sys.jacobians):
        f, k, j = w.plane
        a = w.alpha
        total += dn * ((f - a * b.P) * I[1, 0] + (k - a * b.T) * I[0, 1] + (j - a * b.U) * I[0, 0]
                       - a * b.K * I[2, 0] - a * b.M * I[0, 2] - a * b.O * I[1, 1])
    return _report(sys, total / den, den, oracle)
