"""Abstract N=2 symmetric superpolynomials in the m, p, h, e and g bases.

Elements are finite linear combinations ``sum c_Lambda b_Lambda`` held in an
``AbstractPoly``.  Products of monomials use the diagram algorithm; the
multiplicative bases are products of one-part generators taken left to right
in the part order of the index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from sympy.utilities.iterables import multiset_permutations

from .coeffs import normalize
from .spar import (ANNIHILATED, DistinctnessViolation, Part, Sector,
                   SuperPartition, add_parts, enumerate_sector, validate)

BASES = ("m", "p", "h", "e", "g")
MULTIPLICATIVE = ("p", "h", "e", "g")


class BasisMismatch(ValueError):
    pass


class AbstractPoly:
    """Linear combination of basis elements indexed by superpartitions.

    ``alpha`` is only meaningful for the ``g`` basis, whose elements depend
    on it.
    """

    __slots__ = ("basis", "coeffs", "alpha")

    def __init__(self, basis: str, coeffs=None, alpha=None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.alpha = alpha if basis == "g" else None
        self.coeffs = {}
        for k, c in (coeffs or {}).items():
            if c != 0:
                self.coeffs[k] = normalize(c)

    @classmethod
    def single(cls, basis, sp, c=Fraction(1), alpha=None):
        return cls(basis, {sp: c}, alpha)

    def _check(self, other):
        if self.basis != other.basis or self.alpha != other.alpha:
            raise BasisMismatch(f"{self.basis} vs {other.basis}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return AbstractPoly(self.basis, out, self.alpha)

    __radd__ = __add__

    def __neg__(self):
        return AbstractPoly(self.basis, {k: -c for k, c in self.coeffs.items()}, self.alpha)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return AbstractPoly(self.basis, {k: c * v for k, v in self.coeffs.items()}, self.alpha)

    def __mul__(self, other):
        if isinstance(other, AbstractPoly):
            if self.basis == "m":
                return mul_m(self, other)
            return mul_multiplicative(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, AbstractPoly):
            return (self.basis == other.basis and self.alpha == other.alpha
                    and self.coeffs == other.coeffs)
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.basis, frozenset(self.coeffs.items())))

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, sp):
        return self.coeffs.get(sp, 0)

    def is_zero(self):
        return not self.coeffs

    def sectors(self) -> set:
        return {sp.sector for sp in self.coeffs}

    def items(self):
        """Terms in a deterministic order (sector, then superpartition)."""
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0].sector, kv[0]), reverse=True)

    def __repr__(self):
        if not self.coeffs:
            return f"0 [{self.basis}]"
        return " + ".join(f"({c})*{self.basis}{sp}" for sp, c in self.items())


# -- norm factors ---------------------------------------------------------------


def z_factor(sp: SuperPartition) -> Fraction:
    """``prod_k k^{n(k)} n(k)!`` over the plain parts."""
    out = 1
    for p, n in sp.multiplicities().items():
        if p.mark == "":
            out *= p.value ** n * factorial(n)
    return Fraction(out)


def zeta_factor(sp: SuperPartition) -> Fraction:
    """``prod_k n(k)! / (k+1)^{n(k)}`` over the bilined parts."""
    out = Fraction(1)
    for p, n in sp.multiplicities().items():
        if p.mark == "b":
            out *= Fraction(factorial(n), (p.value + 1) ** n)
    return out


def top_sign(sp: SuperPartition) -> int:
    return -1 if comb(sp.fermion_count, 2) & 1 else 1


def omega_sign(sp: SuperPartition) -> int:
    """``(-1)^(|Lambda| - #bilined - #plain)``."""
    e = sp.size - sum(1 for p in sp if p.mark == "b") - sum(1 for p in sp if p.mark == "")
    return -1 if e & 1 else 1


def diagonal_factor(sp: SuperPartition) -> int:
    """``prod n(part)!`` over distinct parts; diagonal of the p-to-m matrix."""
    out = 1
    for n in sp.multiplicities().values():
        out *= factorial(n)
    return out


# -- monomial products ----------------------------------------------------------


@dataclass(frozen=True)
class ProductTerm:
    gamma: SuperPartition
    mult: int
    sign: int


def _labels(parts, letter):
    """Circle labels row by row; a bilined row gets (over, under)."""
    out, k = [], 0
    for p in parts:
        over = under = None
        if p.over:
            k += 1
            over = (letter, k)
        if p.under:
            k += 1
            under = (letter, k)
        out.append((over, under))
    return out


def _inversion_parity(seq) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[j] < seq[i]:
                inv += 1
    return inv & 1


def _multinomial(counts) -> int:
    out, total = 1, 0
    for c in counts:
        total += c
        out *= comb(total, c)
    return out


@lru_cache(maxsize=None)
def monomial_product(lam: SuperPartition, om: SuperPartition) -> tuple:
    """Expansion of ``m_lam * m_om`` as a tuple of ``ProductTerm``.

    Rows of the padded ``om`` diagram are permuted in every distinct way and
    added to the rows of ``lam``.  A resulting filled diagram is identified by
    the multiset of (result part, lam part, om part) rows.  Its sign is the
    parity of the circle labels read from top to bottom, over before under
    within a row; its multiplicity counts the distinguishable orderings of
    rows sharing the same result part.
    """
    length = len(lam) + len(om)
    zero = Part(0, "")
    lrows = list(lam.parts) + [zero] * (length - len(lam))
    orows = list(om.parts) + [zero] * (length - len(om))
    llab = _labels(lrows, 0)
    olab = {}
    for p, lab in zip(orows, _labels(orows, 1)):
        olab.setdefault(p, []).append(lab)
    seen = {}
    for perm in multiset_permutations(orows):
        rows = []
        for lp, op, ll in zip(lrows, perm, llab):
            g = add_parts(lp, op)
            if g is ANNIHILATED:
                break
            rows.append((g, lp, op, ll))
        else:
            try:
                gamma = validate([r[0] for r in rows])
            except DistinctnessViolation:
                continue
            key = tuple(sorted(((r[0], r[1], r[2]) for r in rows if r[0] != zero),
                               key=lambda t: (t[0].sort_key(), t[1].sort_key(), t[2].sort_key()),
                               reverse=True))
            if key in seen:
                continue
            seen[key] = (gamma, rows, perm)
    out = {}
    for key, (gamma, rows, perm) in seen.items():
        used = {}
        olab_by_row = []
        for p in perm:
            k = used.get(p, 0)
            olab_by_row.append(olab[p][k])
            used[p] = k + 1
        full = [(r[0], r[1], r[2], r[3], ol) for r, ol in zip(rows, olab_by_row)]
        full.sort(key=lambda t: t[0].sort_key(), reverse=True)
        seq = []
        for g, lp, op, ll, ol in full:
            over = ll[0] or ol[0]
            under = ll[1] or ol[1]
            if over:
                seq.append(over)
            if under:
                seq.append(under)
        sign = -1 if _inversion_parity(seq) else 1
        groups = {}
        for g, lp, op in key:
            groups.setdefault(g, {}).setdefault((lp, op), 0)
            groups[g][(lp, op)] += 1
        mult = 1
        for pairs in groups.values():
            mult *= _multinomial(pairs.values())
        out[gamma] = out.get(gamma, 0) + sign * mult
    terms = [ProductTerm(g, abs(c), 1 if c > 0 else -1) for g, c in out.items() if c]
    return tuple(sorted(terms, key=lambda t: t.gamma, reverse=True))


def mul_m(f: AbstractPoly, g: AbstractPoly) -> AbstractPoly:
    if f.basis != "m" or g.basis != "m":
        raise BasisMismatch("mul_m needs two m-basis polynomials")
    out = {}
    for lam, a in f.coeffs.items():
        for om, b in g.coeffs.items():
            ab = a * b
            for t in monomial_product(lam, om):
                out[t.gamma] = out.get(t.gamma, 0) + ab * (t.sign * t.mult)
    return AbstractPoly("m", out)


# -- multiplicative bases ---------------------------------------------------------


def concat(lam: SuperPartition, om: SuperPartition):
    """``f_lam * f_om = sign * f_gamma`` for a multiplicative basis.

    Only o and u generators are odd.  Returns ``(sign, gamma)`` or ``(0, None)``
    when an odd generator repeats.
    """
    seq = list(lam.parts) + list(om.parts)
    try:
        gamma = validate(seq)
    except DistinctnessViolation:
        return 0, None
    order = sorted(range(len(seq)), key=lambda i: seq[i].sort_key(), reverse=True)
    pos = [0] * len(seq)
    for target, i in enumerate(order):
        pos[i] = target
    odd = [pos[i] for i in range(len(seq)) if seq[i].odd]
    return (-1 if _inversion_parity(odd) else 1), gamma


def mul_multiplicative(f: AbstractPoly, g: AbstractPoly) -> AbstractPoly:
    f._check(g)
    if f.basis == "m":
        raise BasisMismatch("use mul_m for the monomial basis")
    out = {}
    for lam, a in f.coeffs.items():
        for om, b in g.coeffs.items():
            sign, gamma = concat(lam, om)
            if sign:
                out[gamma] = out.get(gamma, 0) + sign * a * b
    return AbstractPoly(f.basis, out, f.alpha)


def mul_p(f: AbstractPoly, g: AbstractPoly) -> AbstractPoly:
    if f.basis != "p" or g.basis != "p":
        raise BasisMismatch("mul_p needs two p-basis polynomials")
    return mul_multiplicative(f, g)


def _sector_of_generator(mark: str, n: int) -> Sector:
    return Sector(n, int(mark in ("o", "b")), int(mark in ("u", "b")))


def _one_part(value: int, mark: str) -> SuperPartition:
    return validate([Part(value, mark)])


@lru_cache(maxsize=None)
def _generator_in_m(basis: str, mark: str, n: int, alpha) -> AbstractPoly:
    if basis == "p":
        if mark == "" and n == 0:
            raise ValueError("p_0 is not a generator")
        return AbstractPoly.single("m", _one_part(n, mark))
    if basis == "h":
        s = _sector_of_generator(mark, n)
        out = {}
        for sp in enumerate_sector(s):
            if mark == "":
                c = 1
            elif mark == "o":
                c = sp.of_mark("o")[0] + 1
            elif mark == "u":
                c = sp.of_mark("u")[0] + 1
            else:
                b = sp.of_mark("b")
                if b:
                    c = (b[0] + 2) * (b[0] + 1)
                else:
                    o, u = sp.of_mark("o")[0], sp.of_mark("u")[0]
                    c = (o + 1) * (u + 1) * (1 if o >= u else -1)
            out[sp] = Fraction(c)
        return AbstractPoly("m", out)
    if basis == "e":
        extra = {"": [], "o": [Part(0, "o")], "u": [Part(0, "u")],
                 "b": [Part(0, "o"), Part(0, "u")]}[mark]
        return AbstractPoly.single("m", validate([Part(1, "")] * n + extra))
    if basis == "g":
        out = AbstractPoly("m", {})
        for sp, c in compact_in_p("g", mark, n, alpha).coeffs.items():
            out = out + multiplicative_expand("p", sp).scale(c)
        return out
    raise ValueError(f"unknown basis {basis!r}")


def generator_in_m(basis: str, mark: str, n: int, alpha=None) -> AbstractPoly:
    """Monomial expansion of a one-part generator of the p, h, e or g family."""
    return _generator_in_m(basis, mark, n, alpha if basis == "g" else None)


@lru_cache(maxsize=None)
def _multiplicative_expand(basis: str, parts: tuple, alpha) -> AbstractPoly:
    if not parts:
        return AbstractPoly.single("m", SuperPartition(()))
    head = _multiplicative_expand(basis, parts[:-1], alpha)
    last = parts[-1]
    return mul_m(head, generator_in_m(basis, last.mark, last.value, alpha))


def multiplicative_expand(basis: str, sp: SuperPartition, alpha=None) -> AbstractPoly:
    """``f_Lambda`` in the monomial basis, factors multiplied left to right."""
    return _multiplicative_expand(basis, sp.parts, alpha if basis == "g" else None)


# -- power-sum expansions ---------------------------------------------------------


def over_first_sign(sp: SuperPartition) -> int:
    """Sign relating ``p_Lambda`` to the product with all o factors before u factors."""
    seen_u, inv = 0, 0
    for p in sp:
        if p.mark == "u":
            seen_u += 1
        elif p.mark == "o":
            inv += seen_u
    return -1 if inv & 1 else 1


def compact_in_p(family: str, mark: str, n: int, alpha=None) -> AbstractPoly:
    """Generator of the h, e or g family expanded in power sums.

    The coefficient of ``p_Lambda`` is ``1/z`` (times ``1/zeta`` for the
    bilined generator), times ``omega_Lambda`` for e, times ``alpha^-l`` for g.
    These weights refer to power-sum products with the overlined factor
    written first; ``over_first_sign`` converts to the canonical order.
    """
    s = _sector_of_generator(mark, n)
    out = {}
    for sp in enumerate_sector(s):
        c = over_first_sign(sp) / z_factor(sp)
        if mark == "b":
            c = c / zeta_factor(sp)
        if family == "e":
            c = c * omega_sign(sp)
        elif family == "g":
            c = c * alpha ** (-len(sp))
        elif family != "h":
            raise ValueError(f"no compact form for family {family!r}")
        out[sp] = c
    return AbstractPoly("p", out)


def _p_gen(mark: str, r: int) -> AbstractPoly:
    if mark == "" and r == 0:
        return AbstractPoly("p", {})
    return AbstractPoly.single("p", _one_part(r, mark))


def hep_recursions(family: str, n_max: int) -> dict:
    """The four generator sequences of ``family`` in the p basis, by recursion.

    Returns ``{mark: [f_0, ..., f_{n_max}]}`` for marks ``"", "o", "u", "b"``.
    """
    if family not in ("h", "e"):
        raise ValueError("family must be h or e")
    one = AbstractPoly.single("p", SuperPartition(()))
    F = {m: [] for m in ("", "o", "u", "b")}
    P = _p_gen
    for n in range(n_max + 1):
        if family == "h":
            if n == 0:
                plain = one
            else:
                plain = sum((P("", r) * F[""][n - r] for r in range(1, n + 1)),
                            AbstractPoly("p")).scale(Fraction(1, n))
            F[""].append(plain)
            for mk in ("o", "u"):
                acc = AbstractPoly("p")
                for r in range(n + 1):
                    if r:
                        acc = acc + P("", r) * F[mk][n - r]
                    acc = acc + (P(mk, r) * F[""][n - r]).scale(r + 1)
                F[mk].append(acc.scale(Fraction(1, n + 1)))
            acc = AbstractPoly("p")
            for r in range(n + 1):
                if r:
                    acc = acc + P("", r) * F["b"][n - r]
                acc = acc + (P("o", r) * F["u"][n - r] + F["o"][n - r] * P("u", r)).scale(r + 1)
                acc = acc + (P("b", r) * F[""][n - r]).scale((r + 2) * (r + 1))
            F["b"].append(acc.scale(Fraction(1, n + 2)))
        else:
            if n == 0:
                plain = one
            else:
                plain = sum(((P("", r) * F[""][n - r]).scale((-1) ** (r + 1))
                             for r in range(1, n + 1)), AbstractPoly("p")).scale(Fraction(1, n))
            F[""].append(plain)
            for mk in ("o", "u"):
                acc = AbstractPoly("p")
                for r in range(n + 1):
                    term = (P(mk, r) * F[""][n - r]).scale(-(r + 1))
                    if r:
                        term = term + P("", r) * F[mk][n - r]
                    acc = acc + term.scale((-1) ** (r + 1))
                F[mk].append(acc.scale(Fraction(1, n + 1)))
            acc = AbstractPoly("p")
            for r in range(n + 1):
                term = (P("o", r) * F["u"][n - r] + F["o"][n - r] * P("u", r)).scale(-(r + 1))
                term = term + (P("b", r) * F[""][n - r]).scale((r + 2) * (r + 1))
                if r:
                    term = term + P("", r) * F["b"][n - r]
                acc = acc + term.scale((-1) ** (r + 1))
            F["b"].append(acc.scale(Fraction(1, n + 2)))
    return F
