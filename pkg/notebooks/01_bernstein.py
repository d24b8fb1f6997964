# %% [markdown]
# # Bernstein polynomials on intervals and triangles
#
# The fractal maps below subtract a low-degree Bernstein approximation of the
# data. This notebook shows the pieces that correction is built from.

# %%
from __future__ import annotations

import numpy as np

from bernfractal.bernstein import (BernNodes2D, Interval, Triangle, bern1d_coeffs_deg2,
                                   bern1d_eval, bern1d_integral, bern1d_nodes, bern2d_eval,
                                   bern2d_integral, bern2d_nodes)

# %% [markdown]
# On an interval the degree-m approximation samples f at m + 1 equally spaced
# nodes. Its integral is the interval length times the mean node value.

# %%
I = Interval(-1.0, 1.0)
f = lambda t: np.exp(t)
for m in (1, 2, 4, 8):
    nodes = bern1d_nodes(I, f, m)
    t = np.linspace(-1, 1, 201)
    err = np.max(np.abs(bern1d_eval(I, nodes, t) - f(t)))
    print(f"m={m}: max error {err:.3e}, integral {bern1d_integral(I, nodes):.6f}")
print("exact integral", np.exp(1) - np.exp(-1))

# %% [markdown]
# Degree 2 in monomial form: samples 1, 0, 1 at -1, 0, 1 give c t^2 + d t + e.

# %%
print(bern1d_coeffs_deg2(I, 1.0, 0.0, 1.0))

# %% [markdown]
# On a triangle the nodes sit on a barycentric lattice, and the integral is
# the area times the mean coefficient.

# %%
tri = Triangle((0, 0), (1, 0), (0.5, 1))
g = lambda x, y: y * np.exp(2.5 * x + 0.6 * y)
for m in (1, 2, 4):
    nodes = bern2d_nodes(tri, g, m)
    print(f"m={m}: integral {bern2d_integral(tri, nodes):.5f}, value at centroid "
          f"{float(bern2d_eval(tri, nodes, tri.centroid)):.5f}")
print("field at centroid", g(*tri.centroid))
