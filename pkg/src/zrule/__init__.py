"""Z-rule number triangles: growth, tomographies, periodicity and west-edge analysis."""

from .arith import FactoredNat, PrimeTable, decimal_string, factorize, omega, squarefree_kernel, valuation, z_rule
from .engine import (
    InitialGeneration,
    Tomography,
    Triangle,
    WestEdge,
    build_triangle,
    reconstruct,
    tomography,
    west_edge,
    windowed_tomography,
)

__version__ = "0.1.0"
