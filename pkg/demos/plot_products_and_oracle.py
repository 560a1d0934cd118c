"""
Monomial products two ways
==========================

The product of two monomials is computed with the diagram algorithm and
then again by brute force in three explicit variables.
"""

from supersym.bases import AbstractPoly
from supersym.grassmann import VarConfig, extract_m_coeffs, gmul, monomial_explicit
from supersym.spar import parse

lam, om = parse("[1o,1u,0u]"), parse("[1o,0o]")
abstract = AbstractPoly.single("m", lam) * AbstractPoly.single("m", om)
print("diagrams:", abstract)

# A term of the product has at most 3 + 2 parts.  Five variables therefore
# see every monomial that can occur, and the longer ones of the sector are
# skipped by the truncated reading.
cfg = VarConfig(5)
explicit = gmul(monomial_explicit(lam, cfg), monomial_explicit(om, cfg))
oracle = extract_m_coeffs(explicit, truncated=True)
print("oracle:  ", oracle)
print("agree:", oracle == abstract)
