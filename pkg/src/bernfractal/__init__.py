"""Fractal interpolation with Bernstein-polynomial corrections, on intervals and triangles."""

from .bernstein import (BaryCoord, BernNodes1D, BernNodes2D, Interval, QuadCoeffs2D, Triangle,
                        barycentric, bern1d_coeffs_deg1, bern1d_coeffs_deg2, bern1d_eval,
                        bern1d_integral, bern1d_nodes, bern2d_coeffs_deg1, bern2d_coeffs_deg2,
                        bern2d_eval, bern2d_integral, bern2d_nodes, tri_monomial_integral)
from .errors import *  # noqa: F401,F403
from .fif1d import (AttractorCloud, DataSet1D, FifSystem1D, HyperbolicityReport, UniMap,
                    build_ifs_1d, chaos_game_1d, check_hyperbolic_1d, eval_fif_1d)
from .fif2d import (BivMap, FifSystem2D, build_ifs_2d, chaos_game_2d, check_hyperbolic_2d,
                    edge_continuity_gap, eval_fif_2d)
from .io import export_attractor, ingest_dataset
from .oracle import (WeierstrassSpec, adaptive_quad_1d, exact_poly_integral, triangle_quad,
                     weierstrass_eval, weierstrass_integral)
from .quad1d import QuadReport, integrate_fif_1d
from .quad2d import integrate_fif_2d
from .trimesh import (AffineMap2D, TriPartition, attach_samples, jacobian, locate, partition,
                      solve_map)

__version__ = "0.1.0"
