# %% [markdown]
# # Colour-consistent triangle partitions
#
# The bivariate maps send the whole triangle onto each subtriangle, with
# corners matched by colour. Neighbouring images must then agree on shared
# edges. This notebook builds such a partition and inspects it.

# %%
from __future__ import annotations

import numpy as np

from bernfractal.bernstein import Triangle
from bernfractal.trimesh import jacobian, locate, partition, triangle_count

tri = Triangle((0, 0), (1, 0), (0.5, 1))
part = partition(tri, 4)
print(part.n_vertices, "vertices,", part.n_triangles, "triangles")
print([(d, triangle_count(d)) for d in (3, 4, 10, 49)])

# %%
for k in range(part.n_vertices):
    print(f"{k:2d} {part.vertices[k].round(4)} colour {part.colors[k]}")

# %% [markdown]
# Every subtriangle carries all three colours. The map Jacobians are area
# ratios, so they sum to one.

# %%
cols = np.sort(part.colors[part.triangles], axis=1)
print("every triangle 3-coloured:", bool(np.all(cols == [1, 2, 3])))
maps = part.maps()
print("sum of Jacobians:", sum(jacobian(L) for L in maps))
print("first map:", maps[0])
print("last map:", maps[-1])

# %% [markdown]
# Point location returns the lowest-index triangle containing the point,
# together with its barycentric weights.

# %%
print(locate(part, (0.5, 0.3)))
