"""Exact arithmetic: rationals, polynomials, cyclotomic fields, linear algebra."""

from fractions import Fraction as Rat

from .cyclotomic import (
    CycElem,
    cyc_arith,
    cyclotomic_polynomial,
    divisors,
    euler_phi,
    factor_cyclotomic_over,
    galois_conjugate,
    units_mod,
    zeta,
)
from .factor import factor_squarefree_over_Q, is_irreducible, squarefree_decomposition
from .poly import Poly, X

__all__ = [
    "Rat",
    "Poly",
    "X",
    "CycElem",
    "cyc_arith",
    "cyclotomic_polynomial",
    "divisors",
    "euler_phi",
    "factor_cyclotomic_over",
    "galois_conjugate",
    "units_mod",
    "zeta",
    "factor_squarefree_over_Q",
    "is_irreducible",
    "squarefree_decomposition",
]
