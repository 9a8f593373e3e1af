"""Exact polynomial arithmetic in x/y variables and their K-theoretic exponentials."""

from .expr import MAX_EXPONENT, from_json, parse_poly, render, to_json
from .operators import (
    divide_by_binomial, divided_difference, exact_divide, exact_divide_linear,
    isobaric_demazure, restrict, support, swap_x,
)
from .polynomial import COHOMOLOGICAL, K, MODES, X, Y, Polynomial, arithmetic, product, x, y

__all__ = [
    "COHOMOLOGICAL", "K", "MODES", "MAX_EXPONENT", "Polynomial", "x", "y", "X", "Y",
    "arithmetic", "product", "swap_x", "divided_difference", "isobaric_demazure",
    "restrict", "support", "exact_divide_linear", "exact_divide", "divide_by_binomial",
    "parse_poly", "render", "to_json", "from_json",
]
