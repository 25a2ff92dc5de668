"""Exact computations with Schur representations, Azumaya algebras and
quadratic Galois descent."""

from .exactfield import QQ, PrimeField, QuadField
from .linalg import Matrix
from .ncpoly import FreePresentation, NcPoly, Quiver, free_algebra, path_algebra
from .matrep import MatrixRep, free_rep

__version__ = "0.1.0"

__all__ = ["QQ", "PrimeField", "QuadField", "Matrix", "FreePresentation", "NcPoly", "Quiver",
           "free_algebra", "path_algebra", "MatrixRep", "free_rep", "__version__"]
