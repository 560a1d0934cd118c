"""Coefficient fields and exact linear algebra.

Rational coefficients are ``fractions.Fraction``.  Rational functions of the
deformation parameter live in sympy's ``QQ(alpha)`` fraction field; its
elements mix freely with ``Fraction``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from sympy import QQ, Symbol, sympify
from sympy.polys.fields import FracElement
from sympy.polys.matrices import DomainMatrix

ALPHA_SYMBOL = Symbol("alpha")
QQ_ALPHA = QQ.frac_field(ALPHA_SYMBOL)
ALPHA = QQ_ALPHA.gens[0]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class CoefficientParseError(ValueError):
    def __init__(self, token):
        super().__init__(f"cannot parse coefficient: {token!r}")
        self.token = token


def is_symbolic(c) -> bool:
    return isinstance(c, FracElement)


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(str(text))
    if not m:
        raise CoefficientParseError(text)
    den = int(m.group(2) or 1)
    if den == 0:
        raise CoefficientParseError(text)
    return Fraction(int(m.group(1)), den)


def parse_alpha(text: str):
    """``"2"``, ``"1/3"`` give a Fraction; ``"alpha"`` gives the generator of QQ(alpha)."""
    if str(text).strip() == "alpha":
        return ALPHA
    return parse_rational(text)


def parse_coeff(text):
    """Inverse of ``format_coeff``: ``"p/q"`` or a rational function of alpha."""
    if isinstance(text, int):
        return Fraction(text)
    text = str(text)
    if _RATIONAL.match(text):
        return parse_rational(text)
    if "alpha" not in text or not re.fullmatch(r"[\s\d+\-*/()^alpha]+", text):
        raise CoefficientParseError(text)
    try:
        expr = sympify(text.replace("^", "**"), locals={"alpha": ALPHA_SYMBOL})
        return QQ_ALPHA.from_sympy(expr)
    except Exception as exc:  # sympify raises a zoo of types
        raise CoefficientParseError(text) from exc


def format_coeff(c) -> str:
    """``"p/q"`` for rationals (``q`` always written), ``"(num)/(den)"`` over QQ(alpha)."""
    if is_symbolic(c):
        num, den = c.numer, c.denom
        if num.is_ground and den.is_ground:
            return format_coeff(Fraction(int(num.LC.numerator), int(num.LC.denominator))
                                / Fraction(int(den.LC.numerator), int(den.LC.denominator)))
        return f"({num.as_expr()})/({den.as_expr()})"
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _field_of(rows):
    for row in rows:
        for x in row:
            if is_symbolic(x):
                return QQ_ALPHA
    return QQ


def _to_dm(rows, field):
    conv = []
    for row in rows:
        out = []
        for x in row:
            if field is QQ:
                x = Fraction(x)
                out.append(QQ(x.numerator, x.denominator))
            else:
                out.append(x if is_symbolic(x) else QQ_ALPHA.convert(Fraction(x)))
        conv.append(out)
    return DomainMatrix(conv, (len(rows), len(rows[0]) if rows else 0), field)


def _from_dm(dm, field):
    rows = dm.to_list()
    if field is QQ:
        return [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in rows]
    return [[normalize(x) for x in row] for row in rows]


def normalize(x):
    """Return a Fraction when an element of QQ(alpha) is constant."""
    if is_symbolic(x) and x.numer.is_ground and x.denom.is_ground:
        n, d = x.numer.LC, x.denom.LC
        return Fraction(int(n.numerator), int(n.denominator)) / Fraction(int(d.numerator), int(d.denominator))
    return x


class SingularMatrix(ArithmeticError):
    pass


def invert(rows):
    """Exact inverse of a square matrix given as a list of rows."""
    if not rows:
        return []
    field = _field_of(rows)
    try:
        inv = _to_dm(rows, field).inv()
    except Exception as exc:  # DMNonInvertibleMatrixError and friends
        raise SingularMatrix(str(exc)) from exc
    return _from_dm(inv, field)


def matmul(a, b):
    if not a or not b:
        return [[] for _ in a]
    field = QQ_ALPHA if (_field_of(a) is QQ_ALPHA or _field_of(b) is QQ_ALPHA) else QQ
    return _from_dm(_to_dm(a, field) * _to_dm(b, field), field)


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
