"""Exact convex geometry and numerics for support functions of bodies in the orthant.

Submodules: :mod:`ratgeom` (bodies, cones, hulls, volumes), :mod:`logsupport`
(``H_S``), :mod:`polyspace` (``P^S_m``), :mod:`extremal` (LP extremal
functions), :mod:`massint` (masses and weighted norms), :mod:`pullback`
(polynomial maps) and :mod:`cli`.
"""

from .ratgeom import (Body, PolyCone, dual_cone, extreme_points, gamma_hull, is_lower_set,
                      lower_hull, normal_cone, support, volume)
from .logsupport import hs_eval, sigma, slice_body
from .polyspace import SparsePoly, gap_distance, is_member, lattice_points, s_degree

__version__ = "0.1.0"

__all__ = ["Body", "PolyCone", "dual_cone", "extreme_points", "gamma_hull", "is_lower_set",
           "lower_hull", "normal_cone", "support", "volume", "hs_eval", "sigma", "slice_body",
           "SparsePoly", "gap_distance", "is_member", "lattice_points", "s_degree"]
