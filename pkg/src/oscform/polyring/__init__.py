"""Exact polynomial arithmetic: the coefficient rings and parsers used by

every other module.  Re-exports the public names of the submodules."""

from .poly import (
    Exponents,
    Polynomial,
    degree_block,
    grlex_key,
    multi_index_factorial,
    multi_indices_upto,
    polynomial_from_coefficients,
    uni_divmod,
    uni_gcd,
    uni_gcdex,
    univariate_coefficients,
)
from .ratfunc import RationalFunction
from .quotient import QuotientRingElement
from .binform import (
    binary_coefficients,
    binary_form_gcd,
    check_binary_form,
    form_from_coefficients,
    gen_divmod,
    gen_gcd,
    gen_trim,
    rational_zeros,
    resultant_binary,
    split_rational_linear_factors,
    strip_valuations,
)
from .exprparse import parse_polynomial, parse_rational
from .series import (
    solve_series_system,
    truncated_compose,
    truncated_inverse,
    truncated_multiply,
    truncated_power,
)

__all__ = [
    "Exponents",
    "Polynomial",
    "RationalFunction",
    "QuotientRingElement",
    "degree_block",
    "grlex_key",
    "multi_index_factorial",
    "multi_indices_upto",
    "polynomial_from_coefficients",
    "uni_divmod",
    "uni_gcd",
    "uni_gcdex",
    "univariate_coefficients",
    "binary_coefficients",
    "binary_form_gcd",
    "check_binary_form",
    "form_from_coefficients",
    "gen_divmod",
    "gen_gcd",
    "gen_trim",
    "rational_zeros",
    "resultant_binary",
    "split_rational_linear_factors",
    "strip_valuations",
    "parse_polynomial",
    "parse_rational",
    "solve_series_system",
    "truncated_compose",
    "truncated_inverse",
    "truncated_multiply",
    "truncated_power",
]
