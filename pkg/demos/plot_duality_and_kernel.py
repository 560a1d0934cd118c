"""
Duality and the reproducing kernel
==================================

The monomials and the complete superpolynomials are dual for the power-sum
scalar product.  We print a Gram matrix, then check the kernel expansion
in explicit variables, with and without the deformation parameter.
"""

from fractions import Fraction

from supersym.coeffs import ALPHA
from supersym.transforms import duality_check, duality_gram, kernel_check

for row in duality_gram((1, 1, 1)):
    print([str(c) for c in row])

print(duality_check((3, 1, 1)).status)
print(duality_check((2, 1, 1), ("m", "g"), Fraction(5, 7)).status)
print(duality_check((2, 1, 1), ("m", "g"), ALPHA).status)

print(kernel_check(2, 3).dumps())
print(kernel_check(2, 3, Fraction(2)).dumps())
