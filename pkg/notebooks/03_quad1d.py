# %% [markdown]
# # Integrating the fractal interpolant
#
# The self-affinity gives the integral in closed form from the map
# coefficients, so no sampling is needed. With alpha = 0 it reduces to the
# trapezoid rule.

# %%
from __future__ import annotations

import numpy as np

from bernfractal import build_ifs_1d, integrate_fif_1d
from bernfractal.oracle import weierstrass_integral
from bernfractal.presets import SIGNALS, signal_dataset
from bernfractal.reproduce import alpha_for_target, alpha_sweep

data = signal_dataset(SIGNALS["sin-series"], 5)
C = weierstrass_integral(SIGNALS["sin-series"].spec, 1e-8)
print(f"reference integral {C:.8f}")
for alpha in (0.0, 0.02, 0.04, 0.06):
    for m in (1, 2):
        M = integrate_fif_1d(build_ifs_1d(data, alpha, m)).fractal_value
        print(f"alpha={alpha:.2f} m={m}: M={M:.6f}  error={M - C:+.2e}")

# %% [markdown]
# Under uniform scaling the integral is a Möbius function of alpha, so the
# scaling that matches a target can be solved for directly. A grid sweep
# confirms it.

# %%
print("solved alpha:", alpha_for_target(data, C))
best = min(alpha_sweep(data, C, np.linspace(0, 0.1, 101)), key=lambda r: r["abs_error"])
print("best grid alpha:", best)

# %% [markdown]
# Refinement does not help much for this signal. Equispaced samples alias
# its high-frequency terms, so the error depends on how the grid lines up
# with the oscillations.

# %%
spec = SIGNALS["cos-series"]
C1 = weierstrass_integral(spec.spec, 1e-6)
for n in (5, 9, 17, 31, 61, 121):
    M = integrate_fif_1d(build_ifs_1d(signal_dataset(spec, n - 1), 0.01)).fractal_value
    print(f"{n:4d} points: error {M - C1:+.4e}")
