"""surfclass: classify compact surfaces presented as cell complexes or
triangulations, plus plane-geometry utilities (IFS attractors, Hausdorff
distance, winding numbers)."""

from .cellcomplex import CellComplex, build
from .classify import SurfaceClass, classify, connected_sum
from .intlinalg import FgAbelianGroup, group_format
from .rewrite import NormalForm, is_canonical, make_canonical, normalize, scramble
from .simplicial import (
    SimplicialComplex2,
    build_simplicial,
    homology,
    refine_to_triangulation,
)

__version__ = "0.1.0"

__all__ = [
    "CellComplex",
    "FgAbelianGroup",
    "NormalForm",
    "SimplicialComplex2",
    "SurfaceClass",
    "build",
    "build_simplicial",
    "classify",
    "connected_sum",
    "group_format",
    "homology",
    "is_canonical",
    "make_canonical",
    "normalize",
    "refine_to_triangulation",
    "scramble",
]
