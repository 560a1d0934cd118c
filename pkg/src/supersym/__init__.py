"""Exact computations with N=2 symmetric superpolynomials.

Superpartitions index the m, p, h, e and g bases.  Basis changes are exact
(rationals, or rational functions of ``alpha``), and every abstract identity
can be cross-checked against explicit anticommuting variables in
``supersym.grassmann``.
"""

from .bases import AbstractPoly, generator_in_m, monomial_product, multiplicative_expand
from .coeffs import ALPHA, format_coeff, parse_coeff
from .grassmann import ExplicitPoly, VarConfig, extract_m_coeffs, monomial_explicit
from .spar import (Part, Sector, SuperPartition, add_superpartitions, enumerate_sector,
                   parse, weight_compare)
from .transforms import (Report, convert, duality_check, inner_product, kernel_check,
                         omega_hat, transition)

__version__ = "0.1.0"

__all__ = [
    "ALPHA", "AbstractPoly", "ExplicitPoly", "Part", "Report", "Sector", "SuperPartition",
    "VarConfig", "add_superpartitions", "convert", "duality_check", "enumerate_sector",
    "extract_m_coeffs", "format_coeff", "generator_in_m", "inner_product", "kernel_check",
    "monomial_explicit", "monomial_product", "multiplicative_expand", "omega_hat", "parse",
    "parse_coeff", "transition", "weight_compare",
]
