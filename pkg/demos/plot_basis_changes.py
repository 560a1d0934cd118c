"""
A superpolynomial in five bases
===============================

We start from an explicit symmetric superpolynomial in three variables,
read off its monomial coefficients and rewrite it in the power sums, the
complete and the elementary bases.
"""

from supersym.coeffs import format_coeff
from supersym.grassmann import ExplicitPoly, VarConfig, extract_m_coeffs, gmul, is_symmetric
from supersym.transforms import convert, omega_hat

cfg = VarConfig(3)
x = lambda i: ExplicitPoly.x(cfg, i, 2)  # noqa: E731
phi = lambda i: ExplicitPoly.phi(cfg, i)  # noqa: E731
theta = lambda i: ExplicitPoly.theta(cfg, i)  # noqa: E731


def word(*factors):
    out = ExplicitPoly.constant(cfg)
    for f in factors:
        out = gmul(out, f)
    return out


f = (word(phi(0), phi(1), theta(2), x(0)) + word(phi(0), phi(2), theta(1), x(0))
     + word(phi(1), phi(2), theta(0), x(1)) - word(phi(0), phi(1), theta(2), x(1))
     - word(phi(0), phi(2), theta(1), x(2)) - word(phi(1), phi(2), theta(0), x(2)))
print("symmetric:", is_symmetric(f))

# Three variables are fewer than the longest superpartition of the sector,
# so the expansion is read in truncated mode.
fm = extract_m_coeffs(f, truncated=True)
for basis in ("p", "h", "e"):
    g = convert(fm, basis)
    print(basis, " ".join(f"{format_coeff(c)}*{basis}{sp}" for sp, c in g.items()))

# The involution sends sum c h_L to sum c e_L; through power sums it only
# flips signs, and applying it twice gives f back.
fh = convert(fm, "h")
print(convert(omega_hat(fh), "p") == omega_hat(fh, via_p=True))
print(omega_hat(omega_hat(fm, via_p=True), via_p=True) == convert(fm, "p"))
