"""Exact computations with Lie antialgebras over the rationals."""

from .graded import AlgebraTable, GradedVector, Label, Report, check_antialgebra, check_superalgebra, even, odd
from .linalg import RatMatrix, kernel_basis, quotient, rank, solve

__all__ = [
    "AlgebraTable", "GradedVector", "Label", "Report", "check_antialgebra", "check_superalgebra",
    "even", "odd", "RatMatrix", "kernel_basis", "quotient", "rank", "solve",
]

__version__ = "0.1.0"
