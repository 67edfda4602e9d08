"""Convex decompositions of planar point sets in general position."""

from .baseline import baseline_decompose
from .decomposition import Decomposition
from .geometry import GeneralPositionError, PointSet, convex_hull, orient
from .minimal import decompose, minimalize
from .oracle import min_convex_decomposition
from .pm import NotPmSetError, pm_decompose
from .radial import build_radial_structure
from .verifier import verify

__all__ = [
    "Decomposition",
    "GeneralPositionError",
    "NotPmSetError",
    "PointSet",
    "baseline_decompose",
    "build_radial_structure",
    "convex_hull",
    "decompose",
    "min_convex_decomposition",
    "minimalize",
    "orient",
    "pm_decompose",
    "verify",
]
