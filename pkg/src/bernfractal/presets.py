"""Ready-made test problems: Weierstrass-type signals and bivariate benchmark fields.

Each problem carries its reference integral and benchmark comparison
values, so reproduction scripts only need a name.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .bernstein import Triangle
from .fif1d import DataSet1D
from .oracle import WeierstrassSpec, weierstrass_eval


@dataclass(frozen=True)
class SignalProblem:
    name: str
    spec: WeierstrassSpec
    integral: float                       # benchmark reference value
    benchmark: Dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class FieldProblem:
    name: str
    fn: Callable = field(repr=False)
    domain: Triangle = field(repr=False)
    integral: float
    polynomial: Optional[Dict[Tuple[int, int], float]] = field(default=None, repr=False)
    # d -> (N, M deg 1, M deg 2)
    benchmark: Dict[int, Tuple[int, float, float]] = field(default_factory=dict, repr=False)


SIGNALS = {
    "cos-series": SignalProblem(
        "cos-series", WeierstrassSpec(poly=(1.0,), amp=(-0.7, 0.0, 2.0, 3.0), base=10, kind="cos"),
        integral=2.00407, benchmark={"n_pieces": 30, "error_deg1": 9.0475e-05, "error_deg2": 0.0041}),
    "sin-series": SignalProblem(
        "sin-series", WeierstrassSpec(poly=(0.7, 2.0, 3.0), amp=(-5.0,), base=6, kind="sin"),
        integral=3.4, benchmark={"n_pieces": 5, "error_deg1": 0.0, "error_deg2": 0.1333}),
    "sin-series-8": SignalProblem(
        "sin-series-8", WeierstrassSpec(poly=(0.7, 2.0, 3.0), amp=(-5.0,), base=8, kind="sin"),
        integral=3.4, benchmark={"n_pieces": 5, "error_deg1": 0.0, "error_deg2": 0.1333}),
}


def signal_dataset(problem: SignalProblem, n_pieces: int, K: Optional[int] = None,
                   a: float = -1.0, b: float = 1.0) -> DataSet1D:
    """Sample the signal at ``n_pieces + 1`` equally spaced nodes.

    Nodes are formed as exact rationals so that the trigonometric series
    sees the intended arguments (e.g. ``t = 1`` exactly, not ``1 - 1e-16``).
    """
    spec = problem.spec if K is None else WeierstrassSpec(
        problem.spec.poly, problem.spec.amp, problem.spec.base, problem.spec.kind, K)
    fa, fb = Fraction(a), Fraction(b)
    nodes = [fa + (fb - fa) * Fraction(i, n_pieces) for i in range(n_pieces + 1)]
    return DataSet1D(tuple(float(t) for t in nodes),
                     tuple(weierstrass_eval(spec, t) for t in nodes))


def _exp_field(x, y):
    return y * np.exp(2.5 * x + 0.6 * y)


def _trig_field(x, y):
    return (np.cos(np.pi * x / 4) + np.sin(np.pi * y / 4)) / np.cbrt(x ** 3 + y ** 3)


MATYAS = {(2, 0): 0.26, (0, 2): 0.26, (1, 1): -0.48}
HIMMELBLAU = {(4, 0): 1.0, (0, 4): 1.0, (2, 1): 2.0, (1, 2): 2.0, (2, 0): -21.0,
              (0, 2): -13.0, (1, 0): -14.0, (0, 1): -22.0, (0, 0): 170.0}


def _poly_field(poly):
    def f(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return sum(c * x ** i * y ** j for (i, j), c in poly.items())
    return f


FIELDS = {
    "exp-field": FieldProblem(
        "exp-field", _exp_field, Triangle((0.0, 0.0), (1.0, 0.0), (0.5, 1.0)), integral=0.8502,
        benchmark={4: (27, 0.8465, 0.8370), 10: (183, 0.8490, 0.7699)}),
    "trig-field": FieldProblem(
        "trig-field", _trig_field, Triangle((1.5, 1.5), (2.0, 1.5), (1.75, 2.0)), integral=0.0672,
        benchmark={4: (27, 0.0671, 0.3944), 10: (183, 0.0672, 2.9716)}),
    "matyas": FieldProblem(
        "matyas", _poly_field(MATYAS), Triangle((-10.0, -10.0), (10.0, -10.0), (0.0, 10.0)),
        integral=2600.0, polynomial=MATYAS,
        benchmark={4: (27, 3.0723e3, 3.4592e6), 10: (183, 2.6777e3, 2.2021e7),
                   49: (4707, 2.6047e3, 5.5734e8)}),
    "himmelblau": FieldProblem(
        "himmelblau", _poly_field(HIMMELBLAU), Triangle((-5.0, -5.0), (5.0, -5.0), (0.0, 5.0)),
        integral=7625.0, polynomial=HIMMELBLAU,
        benchmark={4: (27, 9.8090e3, 9.6395e3), 10: (183, 7.9803e3, 7.2675e3)}),
}
