"""Basis changes, scalar products, involutions and identity checks.

Per-sector transition matrices are assembled from the monomial expansions
of the multiplicative bases and inverted exactly.  Row ``Lambda`` of
``M(X, Y)`` holds the coefficients of ``X_Lambda`` in the ``Y`` basis, so a
coefficient vector converts by right multiplication.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .bases import (AbstractPoly, compact_in_p, diagonal_factor, generator_in_m,
                    multiplicative_expand, omega_sign, top_sign,
                    z_factor, zeta_factor)
from .coeffs import format_coeff, identity, invert, matmul, normalize
from .grassmann import (ExplicitPoly, VarConfig, binomial_series, gmul, merge_sign,
                        part_slot, word_sign)
from .spar import (Part, Sector, SuperPartition, WeightCmp, enumerate_sector,
                   validate, weight_compare)


class SectorMismatch(ValueError):
    pass


# -- reports --------------------------------------------------------------------


@dataclass
class Report:
    """Outcome of a verification: ``status`` is ``"pass"`` or ``"fail"``."""

    check: str
    sector: str | None = None
    mismatches: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "fail" if self.mismatches else "pass"

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def add(self, key, lhs, rhs):
        self.mismatches.append({"key": str(key), "lhs": _fmt(lhs), "rhs": _fmt(rhs)})

    def to_json(self) -> dict:
        return {"check": self.check, "sector": self.sector, "status": self.status,
                "mismatches": list(self.mismatches)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _fmt(x):
    if isinstance(x, (int, Fraction)) or hasattr(x, "numer"):
        return format_coeff(x)
    return str(x)


# -- transition matrices ------------------------------------------------------------


@dataclass(frozen=True)
class TransitionMatrix:
    sector: Sector
    from_basis: str
    to_basis: str
    order: tuple
    entries: tuple

    def index(self, sp) -> int:
        return self.order.index(sp)

    def row(self, sp) -> dict:
        i = self.index(sp)
        return {g: c for g, c in zip(self.order, self.entries[i]) if c != 0}

    def apply(self, coeffs: dict) -> dict:
        """Convert ``{Lambda: c}`` in ``from_basis`` to ``to_basis``."""
        out = {}
        for lam, c in coeffs.items():
            row = self.entries[self.index(lam)]
            for g, x in zip(self.order, row):
                if x != 0:
                    out[g] = out.get(g, 0) + c * x
        return out

    def rows(self):
        return [list(r) for r in self.entries]


def _sector(s) -> Sector:
    return Sector(*s)


def _alpha_key(basis, alpha):
    return alpha if basis == "g" else None


@lru_cache(maxsize=None)
def _to_m_rows(s: Sector, basis: str, alpha) -> tuple:
    order = enumerate_sector(s)
    rows = []
    for lam in order:
        if basis == "m":
            rows.append(tuple(Fraction(int(g == lam)) for g in order))
            continue
        f = multiplicative_expand(basis, lam, alpha)
        rows.append(tuple(f[g] for g in order))
    return tuple(rows)


def multiplicative_in_p(basis: str, lam: SuperPartition, alpha=None) -> AbstractPoly:
    """``f_Lambda`` in power sums from the compact generator expansions."""
    out = AbstractPoly.single("p", SuperPartition(()))
    for part in lam:
        out = out * compact_in_p(basis, part.mark, part.value, alpha)
    return out


@lru_cache(maxsize=None)
def _to_p_rows_compact(s: Sector, basis: str, alpha) -> tuple:
    order = enumerate_sector(s)
    rows = []
    for lam in order:
        f = multiplicative_in_p(basis, lam, alpha)
        rows.append(tuple(f[g] for g in order))
    return tuple(rows)


@lru_cache(maxsize=None)
def _transition(s: Sector, frm: str, to: str, alpha) -> TransitionMatrix:
    order = tuple(enumerate_sector(s))
    if frm == to:
        rows = identity(len(order))
    elif to == "m":
        rows = [list(r) for r in _to_m_rows(s, frm, alpha)]
    elif frm == "m":
        rows = invert([list(r) for r in _to_m_rows(s, to, alpha)])
    else:
        a = _transition(s, frm, "m", alpha).rows()
        b = _transition(s, "m", to, alpha).rows()
        rows = matmul(a, b)
    return TransitionMatrix(s, frm, to, order, tuple(tuple(normalize(x) for x in r) for r in rows))


def transition(s, frm: str, to: str, alpha=None) -> TransitionMatrix:
    """``M(frm, to)`` on sector ``s``.  ``alpha`` is used by the g basis."""
    s = _sector(s)
    if "g" in (frm, to) and alpha is None:
        raise ValueError("the g basis needs alpha")
    return _transition(s, frm, to, alpha if "g" in (frm, to) else None)


def compact_transition(s, basis: str, alpha=None) -> TransitionMatrix:
    """``M(basis, p)`` assembled from the compact power-sum formulas."""
    s = _sector(s)
    rows = _to_p_rows_compact(s, basis, _alpha_key(basis, alpha))
    return TransitionMatrix(s, basis, "p", tuple(enumerate_sector(s)), rows)


def convert(f: AbstractPoly, to: str, alpha=None) -> AbstractPoly:
    """Rewrite ``f`` in basis ``to`` (``alpha`` fixes the target g basis)."""
    target_alpha = alpha if to == "g" else None
    if f.basis == to and f.alpha == target_alpha:
        return f
    by_sector = {}
    for sp, c in f.coeffs.items():
        by_sector.setdefault(sp.sector, {})[sp] = c
    out = {}
    for s, coeffs in by_sector.items():
        if f.basis == "g" and to == "g":
            vec = transition(s, "g", "m", f.alpha).apply(coeffs)
            vec = transition(s, "m", "g", target_alpha).apply(vec)
        elif f.basis == "g" or to == "g":
            a = f.alpha if f.basis == "g" else target_alpha
            vec = transition(s, f.basis, to, a).apply(coeffs)
        else:
            vec = transition(s, f.basis, to).apply(coeffs)
        for k, v in vec.items():
            out[k] = out.get(k, 0) + v
    return AbstractPoly(to, out, target_alpha)


# -- scalar product ----------------------------------------------------------------


@dataclass(frozen=True)
class NormFactors:
    z: Fraction
    zeta: Fraction
    top_sign: int


def norm_factors(sp: SuperPartition) -> NormFactors:
    return NormFactors(z_factor(sp), zeta_factor(sp), top_sign(sp))


def _homogeneous_sector(f: AbstractPoly):
    secs = f.sectors()
    return secs.pop() if len(secs) == 1 else None


def inner_product(f: AbstractPoly, g: AbstractPoly, alpha=None):
    """``<f|g>`` with ``<p_L^T|p_O> = alpha^l z zeta delta`` (``alpha`` defaults to 1)."""
    sf, sg = _homogeneous_sector(f), _homogeneous_sector(g)
    if sf is not None and sg is not None and sf != sg:
        raise SectorMismatch(f"{sf} vs {sg}")
    fp, gp = convert(f, "p"), convert(g, "p")
    out = 0
    for sp, c in fp.coeffs.items():
        d = gp.coeffs.get(sp)
        if d is None:
            continue
        w = c * d * top_sign(sp) * z_factor(sp) * zeta_factor(sp)
        if alpha is not None:
            w = w * alpha ** len(sp)
        out = out + w
    return normalize(out) if out != 0 else Fraction(0)


def top(f: AbstractPoly) -> AbstractPoly:
    """Reverse the anticommuting factors: each term picks up its ``top_sign``."""
    return AbstractPoly(f.basis, {sp: c * top_sign(sp) for sp, c in f.coeffs.items()}, f.alpha)


def omega_alpha_sign(sp: SuperPartition, alpha=None):
    w = omega_sign(sp)
    return w if alpha is None else w * alpha ** len(sp)


def omega_hat(f: AbstractPoly, alpha=None, via_p=False) -> AbstractPoly:
    """The involution exchanging the h and e families (``alpha``: deformed map).

    On power sums it multiplies ``p_Lambda`` by ``omega_Lambda`` (times
    ``alpha^l`` when deformed).  Without ``via_p`` an h or e input just
    swaps basis, and a g input with the same alpha maps to e.
    """
    if not via_p:
        if alpha is None and f.basis in ("h", "e"):
            return AbstractPoly("e" if f.basis == "h" else "h", f.coeffs)
        if f.basis == "g" and alpha is not None and f.alpha == alpha:
            return AbstractPoly("e", f.coeffs)
    fp = convert(f, "p")
    return AbstractPoly("p", {sp: c * omega_alpha_sign(sp, alpha) for sp, c in fp.coeffs.items()})


def involution_check(s, alpha=None) -> Report:
    """On sector ``s``: omega squared is the identity, omega(h) = e, and the
    sign on ``p_Lambda`` is the product of the one-part signs.

    With ``alpha`` the deformed map is checked on g instead of h.
    """
    s = _sector(s)
    rep = Report("involution" if alpha is None else f"involution alpha={_fmt(alpha)}", str(s))
    for lam in enumerate_sector(s):
        m = AbstractPoly.single("m", lam)
        if omega_hat(omega_hat(m, via_p=True), via_p=True) != convert(m, "p"):
            rep.add(f"omega^2 m{lam}", "not id", "id")
        e = convert(AbstractPoly.single("e", lam), "p")
        if alpha is None:
            got = omega_hat(AbstractPoly.single("h", lam), via_p=True)
        else:
            got = omega_hat(AbstractPoly.single("g", lam, alpha=alpha), alpha, via_p=True)
        if got != e:
            rep.add(f"omega {'h' if alpha is None else 'g'}{lam}", got, e)
        one = AbstractPoly.single("p", SuperPartition(()))
        for part in lam:
            one = one * omega_hat(AbstractPoly.single("p", validate([part])), via_p=True)
        if one != omega_hat(AbstractPoly.single("p", lam), via_p=True):
            rep.add(f"omega p{lam} multiplicativity", one, "product")
        want = (-1) ** (lam.size - len(lam.of_mark("b")) - len(lam.of_mark("")))
        if omega_sign(lam) != want:
            rep.add(f"omega sign {lam}", omega_sign(lam), want)
    return rep


# -- gram matrices and triangularity ------------------------------------------------------


def duality_gram(s, pair=("m", "h"), alpha=None) -> list:
    """``G[i][j] = <m_i^T | f_j>_alpha`` over the sector, ``f`` = h or g."""
    s = _sector(s)
    order = enumerate_sector(s)
    left, right = pair
    a = transition(s, left, "p").rows()
    b = transition(s, right, "p", alpha).rows() if right == "g" else transition(s, right, "p").rows()
    weights = []
    for sp in order:
        w = z_factor(sp) * zeta_factor(sp)
        if alpha is not None:
            w = w * alpha ** len(sp)
        weights.append(w)
    sign = top_sign(order[0]) if order else 1
    gram = []
    for i in range(len(order)):
        row = []
        for j in range(len(order)):
            acc = 0
            for k in range(len(order)):
                if a[i][k] != 0 and b[j][k] != 0:
                    acc = acc + a[i][k] * b[j][k] * weights[k]
            # <m^T|f> = top_sign * <m|f>, and <m|f> carries top_sign again
            row.append(normalize(acc * sign * sign) if acc != 0 else Fraction(0))
        gram.append(row)
    return gram


def duality_check(s, pair=("m", "h"), alpha=None) -> Report:
    s = _sector(s)
    rep = Report(f"duality-{pair[0]}-{pair[1]}", str(s))
    order = enumerate_sector(s)
    for i, row in enumerate(duality_gram(s, pair, alpha)):
        for j, x in enumerate(row):
            want = 1 if i == j else 0
            if x != want:
                rep.add(f"{order[i]},{order[j]}", x, want)
    return rep


def triangularity_check(s) -> Report:
    """``M(p, m)`` has support on ``Gamma > Lambda`` plus the diagonal ``a_Lambda``."""
    s = _sector(s)
    rep = Report("triangularity", str(s))
    M = transition(s, "p", "m")
    for lam in M.order:
        for gam, c in M.row(lam).items():
            if gam == lam:
                if c != diagonal_factor(lam):
                    rep.add(f"{lam} diagonal", c, diagonal_factor(lam))
            elif weight_compare(gam, lam) is not WeightCmp.GREATER:
                rep.add(f"{lam}->{gam}", c, 0)
        if M.row(lam).get(lam, 0) == 0:
            rep.add(f"{lam} diagonal", 0, diagonal_factor(lam))
    return rep


def routes_check(s, basis: str, alpha=None) -> Report:
    """``M(basis, m)`` through products of monomials vs compact power sums times ``M(p, m)``."""
    s = _sector(s)
    rep = Report(f"routes-{basis}", str(s))
    direct = transition(s, basis, "m", alpha) if basis == "g" else transition(s, basis, "m")
    via = matmul(compact_transition(s, basis, alpha).rows(), transition(s, "p", "m").rows())
    for i, lam in enumerate(direct.order):
        for j, gam in enumerate(direct.order):
            if direct.entries[i][j] != via[i][j]:
                rep.add(f"{lam}->{gam}", direct.entries[i][j], via[i][j])
    return rep


# -- truncated generating series ------------------------------------------------------
#
# A series is a dict {(n, tau): AbstractPoly} meaning sum t^n tau^A f, with the
# tau monomial (1 = tau_over, 2 = tau_under, 3 = tau_over tau_under) on the
# left of the coefficient.


def _parity(f: AbstractPoly) -> int:
    for sp in f.coeffs:
        return sp.fermion_count & 1
    return 0


@dataclass
class TruncatedSeries:
    t_max: int
    components: dict

    def __mul__(self, other):
        out = {}
        for (n1, a), f in self.components.items():
            for (n2, b), g in other.components.items():
                n = n1 + n2
                if n > self.t_max or a & b:
                    continue
                sign = merge_sign(a, b)
                if bin(b).count("1") & _parity(f):
                    sign = -sign
                prod = (f * g).scale(sign)
                key = (n, a | b)
                out[key] = out[key] + prod if key in out else prod
        return TruncatedSeries(self.t_max, out)

    def negate_arguments(self):
        """``F(-t, -tau_over, -tau_under)``."""
        return TruncatedSeries(self.t_max, {
            (n, a): f.scale((-1) ** (n + bin(a).count("1"))) for (n, a), f in self.components.items()})

    def euler(self):
        """``(t d/dt + tau_over d/dtau_over + tau_under d/dtau_under)``."""
        return TruncatedSeries(self.t_max, {
            (n, a): f.scale(n + bin(a).count("1")) for (n, a), f in self.components.items()})

    def scale(self, c):
        return TruncatedSeries(self.t_max, {k: f.scale(c) for k, f in self.components.items()})

    def diff(self, other) -> dict:
        keys = set(self.components) | set(other.components)
        out = {}
        for k in sorted(keys):
            a = self.components.get(k)
            b = other.components.get(k)
            if a is None:
                d = -b
            elif b is None:
                d = a
            else:
                d = a - b
            if not d.is_zero():
                out[k] = (a, b)
        return out


def _family_generators(family: str, basis: str, mark: str, n: int):
    """Generator of ``family`` as an AbstractPoly in ``basis`` (p or m)."""
    if family == "p":
        if mark == "" and n == 0:
            return AbstractPoly(basis)
        return _one(n, mark) if basis == "p" else generator_in_m("p", mark, n)
    if basis == "p":
        return compact_in_p(family, mark, n)
    return generator_in_m(family, mark, n)


def _one(n, mark):
    return AbstractPoly.single("p", validate([Part(n, mark)]))


def generating_series(family: str, t_max: int, basis="p") -> TruncatedSeries:
    """P, H or E truncated at ``t^t_max`` with components in ``basis``."""
    comps = {}
    for n in range(t_max + 1):
        f = {m: _family_generators(family, basis, m, n) for m in ("", "o", "u", "b")}
        if family == "p":
            comps[(n, 0)] = f[""]
            comps[(n, 1)] = f["o"].scale(n + 1)
            comps[(n, 2)] = f["u"].scale(n + 1)
            comps[(n, 3)] = f["b"].scale(-(n + 1) * (n + 2))
        else:
            comps[(n, 0)] = f[""]
            comps[(n, 1)] = f["o"]
            comps[(n, 2)] = f["u"]
            comps[(n, 3)] = -f["b"]
    return TruncatedSeries(t_max, {k: v for k, v in comps.items()})


def genfun_identities(n_max: int, basis="p") -> list:
    """``HE(-) = 1``, ``HP = Euler H`` and ``EP(-) = -Euler E`` up to ``t^n_max``."""
    H = generating_series("h", n_max, basis)
    E = generating_series("e", n_max, basis)
    P = generating_series("p", n_max, basis)
    one = TruncatedSeries(n_max, {(0, 0): AbstractPoly.single(basis, SuperPartition(()))})
    reports = []
    for name, lhs, rhs in (
            ("HE=1", H * E.negate_arguments(), one),
            ("HP=EulerH", H * P, H.euler()),
            ("EP(-)=-EulerE", E * P.negate_arguments(), E.euler().scale(-1))):
        rep = Report(f"genfun {name}", f"t<={n_max}")
        for key, (a, b) in lhs.diff(rhs).items():
            rep.add(f"t^{key[0]} tau{key[1]}", a, b)
        reports.append(rep)
    return reports


def table2_rows(n_max: int, basis="p") -> list:
    """The nine relations between the h, e and p generators for ``n <= n_max``.

    Generators come from the compact power-sum forms (``basis="p"``) or from
    the closed monomial forms (``basis="m"``); each row is checked as an
    identity in that basis.
    """
    def g(fam, mark, n):
        return _family_generators(fam, basis, mark, n)

    zero = AbstractPoly(basis)
    rows = {}
    for n in range(n_max + 1):
        R = range(n + 1)
        h = lambda m, k: g("h", m, k)  # noqa: E731
        e = lambda m, k: g("e", m, k)  # noqa: E731
        p = lambda m, k: g("p", m, k)  # noqa: E731
        sgn = lambda r: (-1) ** r  # noqa: E731
        checks = {}
        if n >= 1:
            checks["A-1"] = sum(((e("", r) * h("", n - r)).scale(sgn(r)) for r in R), zero)
        checks["A-2"] = sum(((e("", r) * h("o", n - r) - e("o", r) * h("", n - r)).scale(sgn(r))
                             for r in R), zero)
        checks["A-2u"] = sum(((e("", r) * h("u", n - r) - e("u", r) * h("", n - r)).scale(sgn(r))
                              for r in R), zero)
        checks["A-3"] = sum(((e("b", r) * h("", n - r) - h("o", n - r) * e("u", r)
                              - e("o", r) * h("u", n - r) + e("", r) * h("b", n - r)).scale(sgn(r))
                             for r in R), zero)
        checks["B-1"] = h("", n).scale(n) - sum((p("", r) * h("", n - r) for r in range(1, n + 1)), zero)
        checks["B-2"] = h("o", n).scale(n + 1) - sum(
            (p("", r) * h("o", n - r) + (p("o", r) * h("", n - r)).scale(r + 1) for r in R), zero)
        checks["B-3"] = h("b", n).scale(n + 2) - sum(
            (p("", r) * h("b", n - r)
             + (p("o", r) * h("u", n - r) + h("o", n - r) * p("u", r)).scale(r + 1)
             + (p("b", r) * h("", n - r)).scale((r + 2) * (r + 1)) for r in R), zero)
        checks["C-1"] = e("", n).scale(n) - sum(
            ((p("", r) * e("", n - r)).scale(sgn(r + 1)) for r in range(1, n + 1)), zero)
        checks["C-2"] = e("o", n).scale(n + 1) - sum(
            ((p("", r) * e("o", n - r) - (p("o", r) * e("", n - r)).scale(r + 1)).scale(sgn(r + 1))
             for r in R), zero)
        checks["C-3"] = e("b", n).scale(n + 2) - sum(
            ((p("", r) * e("b", n - r)
              - (p("o", r) * e("u", n - r) + e("o", n - r) * p("u", r)).scale(r + 1)
              + (p("b", r) * e("", n - r)).scale((r + 2) * (r + 1))).scale(sgn(r + 1)) for r in R), zero)
        for name, val in checks.items():
            rows.setdefault(name, Report(f"table2 {name}", f"n<={n_max} [{basis}]"))
            if not val.is_zero():
                rows[name].add(f"n={n}", val, 0)
    return list(rows.values())


# -- kernels ------------------------------------------------------------------------


def _side_power_sum(offsets, n, cfg, first, count):
    """Power sum over variables ``first .. first+count-1`` of ``cfg``."""
    out = ExplicitPoly(cfg)
    for i in range(first, first + count):
        e = [0] * cfg.n_vars
        e[i] = n
        sign, mask = word_sign([cfg.gen(i, o) for o in offsets])
        out = out + ExplicitPoly(cfg, {(tuple(e), mask): Fraction(sign)})
    return out


def _explicit_p(sp, cfg, first, count, slot):
    out = ExplicitPoly.constant(cfg)
    for part in sp:
        value, offs = slot(part)
        out = gmul(out, _side_power_sum(offs, value, cfg, first, count))
    return out


def kernel_series(n_vars: int, degree: int, max_fermions: tuple, alpha=None, n_types=2,
                  couplings=None, max_total=None) -> ExplicitPoly:
    """Truncated ``prod_{i,j} (1 - x_i y_j - sum_t g_i^(t) h_j^(t))^(-1/alpha)``.

    Variables ``0..N-1`` carry the first alphabet, ``N..2N-1`` the second.
    Terms are kept when the first alphabet has x-degree ``<= degree`` and at
    most ``max_fermions[t]`` generators of each type offset ``t`` (and at
    most ``max_total`` in all, when given).
    """
    T = n_types
    cfg = VarConfig(2 * n_vars, T)
    type_masks = []
    for t in range(T):
        m = 0
        for i in range(n_vars):
            m |= 1 << cfg.gen(i, t)
        type_masks.append(m)

    first_mask = sum(type_masks)

    def keep(key):
        e, m = key
        if sum(e[:n_vars]) > degree:
            return False
        if max_total is not None and (m & first_mask).bit_count() > max_total:
            return False
        return all((m & tm).bit_count() <= mf for tm, mf in zip(type_masks, max_fermions))

    exponent = Fraction(1) if alpha is None else 1 / alpha
    coeffs = binomial_series(exponent, degree + sum(max_fermions) + 1)
    total = ExplicitPoly.constant(cfg)
    for i in range(n_vars):
        for j in range(n_vars):
            u = gmul(ExplicitPoly.x(cfg, i), ExplicitPoly.x(cfg, n_vars + j))
            for t in range(T):
                u = u + gmul(ExplicitPoly.generator(cfg, i, t),
                             ExplicitPoly.generator(cfg, n_vars + j, t))
            factor = ExplicitPoly.constant(cfg)
            power = ExplicitPoly.constant(cfg)
            for k in range(1, len(coeffs)):
                power = gmul(power, u, keep)
                if power.is_zero():
                    break
                factor = factor + power.scale(coeffs[k])
            total = gmul(total, factor, keep)
    return total


def kernel_check(degree: int, n_vars: int = 3, alpha=None, max_fermions=(1, 1)) -> Report:
    """Compare the truncated kernel with its diagonal power-sum expansion."""
    label = f"deg<={degree},N={n_vars},fermions<={list(max_fermions)}"
    rep = Report("kernel" if alpha is None else f"kernel alpha={_fmt(alpha)}", label)
    lhs = kernel_series(n_vars, degree, max_fermions, alpha)
    cfg = lhs.config
    rhs = ExplicitPoly(cfg)
    for n in range(degree + 1):
        for a in range(max_fermions[0] + 1):
            for b in range(max_fermions[1] + 1):
                for sp in enumerate_sector((n, a, b)):
                    c = Fraction(top_sign(sp)) / (z_factor(sp) * zeta_factor(sp))
                    if alpha is not None:
                        c = c * alpha ** (-len(sp))
                    px = _explicit_p(sp, cfg, 0, n_vars, part_slot)
                    py = _explicit_p(sp, cfg, n_vars, n_vars, part_slot)
                    rhs = rhs + gmul(px, py).scale(c)
    diff = lhs - rhs
    for key, c in sorted(diff.terms.items(), key=lambda kv: str(kv[0]))[:20]:
        rep.add(key, lhs.terms.get(key, 0), rhs.terms.get(key, 0))
    return rep

