"""Exact arithmetic over the rationals: polynomials, rational functions,
truncated Laurent series, deformation series and dense matrices."""

from fractions import Fraction

from .matrix import ExactMatrix, InconsistentSystem
from .polynomial import Polynomial, RationalFunction
from .rational import Rational, format_rational, parse_rational
from .series import DeformationSeries, LaurentSeries, WindowError

__all__ = [
    "DeformationSeries",
    "ExactMatrix",
    "Fraction",
    "InconsistentSystem",
    "LaurentSeries",
    "Polynomial",
    "Rational",
    "RationalFunction",
    "WindowError",
    "format_rational",
    "parse_rational",
]
