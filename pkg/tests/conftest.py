from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, settings, strategies as st

from bernfractal import DataSet1D, Triangle

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)


@st.composite
def triangles(draw, scale=10.0):
    pts = draw(st.lists(st.floats(-scale, scale, allow_nan=False), min_size=6, max_size=6))
    a, b, c = np.array(pts).reshape(3, 2)
    e1, e2 = b - a, c - a
    area = 0.5 * abs(e1[0] * e2[1] - e1[1] * e2[0])
    # keep well-shaped triangles so tolerances stay meaningful
    longest = max(np.linalg.norm(e1), np.linalg.norm(e2), np.linalg.norm(c - b))
    assume(area > 1e-2 * longest ** 2 and area > 1e-3)
    return Triangle(tuple(a), tuple(b), tuple(c))


@st.composite
def datasets_1d(draw, min_n=2, max_n=12):
    n = draw(st.integers(min_n, max_n))
    gaps = draw(st.lists(st.floats(0.05, 3.0), min_size=n - 1, max_size=n - 1))
    start = draw(st.floats(-5, 5))
    p = np.concatenate([[start], start + np.cumsum(gaps)])
    q = draw(st.lists(st.floats(-10, 10), min_size=n, max_size=n))
    return DataSet1D(tuple(p), tuple(q))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# criterion number -> list of (part, passed, detail), filled by the acceptance tests
VERDICTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(VERDICTS):
        parts = VERDICTS[n]
        ok = all(p[1] for p in parts)
        detail = "; ".join(f"{name}: {'ok' if good else 'FAIL'} ({info})" for name, good, info in parts)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
