"""Exact arithmetic in F_q, F_q[t], F_q(t) and truncated F_q((1/t))."""
from .field import DEFAULT_MODULI, FieldConfig, FieldElement, prime_power
from .polynomial import Polynomial, RationalFunction, monic_coefficient_matrix, monics_of_degree
from .series import LaurentSeries, polynomial_part, rational_to_series

__all__ = [
    "DEFAULT_MODULI", "FieldConfig", "FieldElement", "prime_power",
    "Polynomial", "RationalFunction", "monics_of_degree", "monic_coefficient_matrix",
    "LaurentSeries", "polynomial_part", "rational_to_series",
]
