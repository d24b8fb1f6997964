"""Closed-form integral of a univariate Bernstein FIF.

Integrating the self-referential equation of the FIF over ``[p1, pN]``
and substituting ``p -> S_i(p)`` on each piece gives

    M = [sum a_i int g(S_i p) dp - sum alpha_i a_i int B_m(g, p) dp] / (1 - sum alpha_i a_i)

Every term on the right is a polynomial integral, so no sampling of the
FIF is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bernstein import bern1d_coeffs_deg1, bern1d_coeffs_deg2, bern1d_integral
from .errors import SingularDenominator, UnsupportedDegree
from .fif1d import FifSystem1D

SINGULAR_TOL = 1e-12
ILL_CONDITIONED = 0.5


@dataclass(frozen=True)
class QuadReport:
    fractal_value: float
    denominator: float
    degree: int
    n_pieces: int
    oracle_value: Optional[float] = None
    abs_error: Optional[float] = None

    @property
    def ill_conditioned(self) -> bool:
        """True when the denominator is small enough to amplify rounding noticeably."""
        return abs(self.denominator) < ILL_CONDITIONED

    def with_oracle(self, value: float) -> "QuadReport":
        return QuadReport(self.fractal_value, self.denominator, self.degree, self.n_pieces,
                          oracle_value=float(value), abs_error=abs(self.fractal_value - value))


def _denominator(sys: FifSystem1D) -> float:
    den = 1.0 - float(np.dot(sys.alphas, sys.a))
    if abs(den) <= SINGULAR_TOL:
        raise SingularDenominator(f"1 - sum(alpha_i a_i) = {den:.3e} is numerically zero")
    return den


def _report(sys, value, den, oracle):
    rep = QuadReport(fractal_value=float(value), denominator=den, degree=sys.degree,
                     n_pieces=len(sys.maps))
    return rep if oracle is None else rep.with_oracle(oracle)


def integrate_fif_1d(sys: FifSystem1D, oracle: Optional[float] = None) -> QuadReport:
    """Fractal integral for any Bernstein degree."""
    den = _denominator(sys)
    L = sys.interval.length
    q = np.asarray(sys.dataset.q)
    a = sys.a
    chord = math.fsum(a * L * 0.5 * (q[:-1] + q[1:]))
    bern = bern1d_integral(sys.interval, sys.bern_nodes)
    value = (chord - float(np.dot(sys.alphas, a)) * bern) / den
    return _report(sys, value, den, oracle)


def integrate_fif_1d_deg1(sys: FifSystem1D, oracle: Optional[float] = None) -> QuadReport:
    """Monomial-coefficient formula for ``m = 1``."""
    if sys.degree != 1:
        raise UnsupportedDegree("system was not built with degree 1")
    den = _denominator(sys)
    p1, pN = sys.interval.p1, sys.interval.pN
    q1, qN = sys.dataset.q[0], sys.dataset.q[-1]
    a = sys.a
    al = sys.alphas
    A = np.array([w.A for w in sys.maps])
    B = np.array([w.B for w in sys.maps])
    bern = (pN + p1) * (qN - q1) / 2.0 + (pN * q1 - p1 * qN)
    num = ((pN ** 2 - p1 ** 2) / 2.0 * np.dot(a, A) + (pN - p1) * np.dot(a, B)
           - np.dot(al * a, np.full_like(a, bern)))
    return _report(sys, num / den, den, oracle)


def integrate_fif_1d_deg2(sys: FifSystem1D, oracle: Optional[float] = None) -> QuadReport:
    """Monomial-coefficient formula for ``m = 2`` with ``B_2 = c p^2 + d p + e``."""
    if sys.degree != 2:
        raise UnsupportedDegree("system was not built with degree 2")
    den = _denominator(sys)
    I = sys.interval
    p1, pN = I.p1, I.pN
    c, d, e = bern1d_coeffs_deg2(I, *sys.bern_nodes.values)
    a = sys.a
    al = sys.alphas
    A = np.array([w.A for w in sys.maps])
    B = np.array([w.B for w in sys.maps])
    num = (-(pN ** 3 - p1 ** 3) / 3.0 * np.dot(al * a, np.full_like(a, c))
           + (pN ** 2 - p1 ** 2) / 2.0 * np.dot(a, A - al * d)
           + (pN - p1) * np.dot(a, B - al * e))
    return _report(sys, num / den, den, oracle)
