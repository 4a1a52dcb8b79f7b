"""Lattice polygons in a box, log del Pezzo polygons and their toric codes."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .lattice import (  # noqa: F401
    AffineUnimodularMap,
    LatticePolygon,
    apply_map,
    bounding_square_size,
    convex_hull,
    interior_points,
    is_equivalent,
    lattice_points,
    normal_form,
    normalized_volume,
    point_count,
    width_along,
)
from .classify import box_stats, classify_box, is_homogeneous, shave  # noqa: F401
from .ldp import dual_polygon, gorenstein_index, is_ldp, minimum_box  # noqa: F401
from .gf import field_make  # noqa: F401
from .toric import generator_matrix  # noqa: F401
from .mindist import bz_min_distance, exact_min_distance, row_combo_bound  # noqa: F401
