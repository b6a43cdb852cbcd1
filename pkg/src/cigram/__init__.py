"""Exact computations for hypergeometric groups of Calabi-Yau complete
intersections in weighted projective space."""

from .exact import ExactMatrix, NilpotentPoly, Polynomial, charpoly, kernel_basis, matmul, poly_gcd
from .hypergroup import (
    CompleteIntersectionData,
    InvalidDataError,
    build_data,
    char_coefficients,
    exponent_spectrum,
    generators,
    jordan_at_zero,
    reduced_charpolys,
)
from .pipeline import CaseSpec, analyze_data

__all__ = [
    "CaseSpec",
    "CompleteIntersectionData",
    "ExactMatrix",
    "InvalidDataError",
    "NilpotentPoly",
    "Polynomial",
    "analyze_data",
    "build_data",
    "char_coefficients",
    "charpoly",
    "exponent_spectrum",
    "generators",
    "jordan_at_zero",
    "kernel_basis",
    "matmul",
    "poly_gcd",
    "reduced_charpolys",
]

__version__ = "0.1.0"
