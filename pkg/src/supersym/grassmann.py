"""Explicit finite-variable superpolynomials.

This is the brute-force side of the package: polynomials in commuting
``x_1..x_N`` and anticommuting generators, stored term by term.  Every
abstract identity elsewhere is checked against it.

Each variable ``i`` owns ``n_types`` anticommuting generators.  For the two
families of the N=2 theory these are ``phi_i`` (over) and ``theta_i`` (under)
and the canonical word order is ``phi_1, theta_1, phi_2, theta_2, ...``.
A term is a pair ``(x_exponents, mask)`` where bit ``k`` of ``mask`` is the
``k``-th generator in canonical order; the stored coefficient belongs to the
word written in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from sympy.utilities.iterables import multiset_permutations

from .spar import Part, Sector, SuperPartition, enumerate_sector


class ConfigMismatch(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class UnstableVariableCount(ValueError):
    pass


class TooFewVariables(ValueError):
    pass


@dataclass(frozen=True)
class VarConfig:
    n_vars: int
    n_types: int = 2

    def __post_init__(self):
        if self.n_vars < 1 or self.n_types < 0:
            raise ValueError("need n_vars >= 1 and n_types >= 0")

    def gen(self, var: int, offset: int) -> int:
        """Bit position of generator ``offset`` (0-based, canonical order) of ``var``."""
        return var * self.n_types + offset

    def phi(self, var: int) -> int:
        return self.gen(var, 0)

    def theta(self, var: int) -> int:
        return self.gen(var, 1)

    def var_of(self, bit: int) -> int:
        return bit // self.n_types


def _bits(mask: int) -> list:
    out, k = [], 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def word_sign(word: Iterable[int]):
    """Sort a list of generator positions.  Returns ``(sign, mask)`` or ``(0, None)``."""
    w = list(word)
    if len(set(w)) != len(w):
        return 0, None
    inv = 0
    for i in range(len(w)):
        wi = w[i]
        for j in range(i + 1, len(w)):
            if w[j] < wi:
                inv += 1
    mask = 0
    for b in w:
        mask |= 1 << b
    return (-1 if inv & 1 else 1), mask


def merge_sign(a: int, b: int) -> int:
    """Sign of ``word(a) * word(b)`` brought to canonical order (``a & b == 0``)."""
    inv = 0
    while b:
        low = b & -b
        inv += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if inv & 1 else 1


class ExplicitPoly:
    """Sparse polynomial in x and anticommuting generators."""

    __slots__ = ("config", "terms")

    def __init__(self, config: VarConfig, terms=None):
        self.config = config
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if c != 0:
                    self.terms[k] = c

    # constructors
    @classmethod
    def zero(cls, cfg):
        return cls(cfg)

    @classmethod
    def constant(cls, cfg, c=1):
        return cls(cfg, {((0,) * cfg.n_vars, 0): Fraction(c)})

    @classmethod
    def x(cls, cfg, var, power=1):
        e = [0] * cfg.n_vars
        e[var] = power
        return cls(cfg, {(tuple(e), 0): Fraction(1)})

    @classmethod
    def generator(cls, cfg, var, offset):
        return cls(cfg, {((0,) * cfg.n_vars, 1 << cfg.gen(var, offset)): Fraction(1)})

    @classmethod
    def phi(cls, cfg, var):
        return cls.generator(cfg, var, 0)

    @classmethod
    def theta(cls, cfg, var):
        return cls.generator(cfg, var, 1)

    # arithmetic
    def _check(self, other):
        if self.config != other.config:
            raise ConfigMismatch(f"{self.config} vs {other.config}")

    def __add__(self, other):
        if not isinstance(other, ExplicitPoly):
            other = ExplicitPoly.constant(self.config, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return ExplicitPoly(self.config, out)

    __radd__ = __add__

    def __neg__(self):
        return ExplicitPoly(self.config, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if c == 0:
            return ExplicitPoly(self.config)
        return ExplicitPoly(self.config, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ExplicitPoly):
            return gmul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, ExplicitPoly):
            return self.config == other.config and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"ExplicitPoly({len(self.terms)} terms, N={self.config.n_vars})"

    def to_str(self) -> str:
        names = ["phi", "theta"] if self.config.n_types == 2 else None
        out = []
        for (e, m), c in sorted(self.terms.items(), reverse=True):
            word = []
            for b in _bits(m):
                v, off = divmod(b, self.config.n_types)
                word.append(f"{names[off]}{v + 1}" if names else f"t{off}_{v + 1}")
            xs = [f"x{i + 1}^{p}" if p > 1 else f"x{i + 1}" for i, p in enumerate(e) if p]
            out.append(f"({c})" + "".join("*" + w for w in word + xs))
        return " + ".join(out) if out else "0"

    def x_degree(self):
        degs = {sum(e) for e, _ in self.terms}
        return degs.pop() if len(degs) == 1 else None


def gmul(a: ExplicitPoly, b: ExplicitPoly, keep: Callable | None = None) -> ExplicitPoly:
    """Product with Grassmann signs.  ``keep(key)`` optionally truncates the result."""
    a._check(b)
    out = {}
    for (ea, ma), ca in a.terms.items():
        for (eb, mb), cb in b.terms.items():
            if ma & mb:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            key = (e, ma | mb)
            if keep is not None and not keep(key):
                continue
            c = ca * cb
            if merge_sign(ma, mb) < 0:
                c = -c
            out[key] = out.get(key, 0) + c
    return ExplicitPoly(a.config, out)


# -- symmetrization -------------------------------------------------------------


def part_slot(p: Part) -> tuple:
    """Generator offsets carried by an N=2 part, in word order."""
    return (p.value, {"": (), "o": (0,), "u": (1,), "b": (0, 1)}[p.mark])


def _assign(slots, arrangement):
    """Variables occupied by each entry of ``slots`` under ``arrangement``."""
    where = {}
    for var, s in enumerate(arrangement):
        where.setdefault(s, []).append(var)
    used = {s: 0 for s in where}
    out = []
    for s in slots:
        out.append(where[s][used[s]])
        used[s] += 1
    return out


def _term_of(slots, variables, cfg):
    word = []
    e = [0] * cfg.n_vars
    for (value, offs), var in zip(slots, variables):
        e[var] += value
        word.extend(cfg.gen(var, o) for o in offs)
    sign, mask = word_sign(word)
    return sign, (tuple(e), mask)


def symmetrize(slots: list, cfg: VarConfig) -> ExplicitPoly:
    """Sum of the canonical term of ``slots`` over distinct permutations."""
    return _symmetrize(tuple(slots), cfg)


@lru_cache(maxsize=4096)
def _symmetrize(slots: tuple, cfg: VarConfig) -> ExplicitPoly:
    if len(slots) > cfg.n_vars:
        raise TooFewVariables(f"{len(slots)} parts but only {cfg.n_vars} variables")
    padded = list(slots) + [(0, ())] * (cfg.n_vars - len(slots))
    out = {}
    for arrangement in multiset_permutations(padded):
        variables = _assign(padded, arrangement)
        sign, key = _term_of(padded, variables, cfg)
        if sign:
            out[key] = out.get(key, 0) + sign
    return ExplicitPoly(cfg, {k: Fraction(v) for k, v in out.items()})


def product_coefficient(a: ExplicitPoly, b: ExplicitPoly, key) -> Fraction:
    """Coefficient of one term of ``a * b`` without forming the product."""
    e, m = key
    out = 0
    for (ea, ma), ca in a.terms.items():
        if ma & ~m:
            continue
        eb = tuple(x - y for x, y in zip(e, ea))
        if min(eb) < 0:
            continue
        mb = m & ~ma
        cb = b.terms.get((eb, mb))
        if cb is None:
            continue
        out += merge_sign(ma, mb) * ca * cb
    return out


def product_m_coeffs(make_a: Callable, make_b: Callable, s):
    """Monomial coefficients of ``a * b`` read from canonical terms only.

    ``make_a(cfg)`` and ``make_b(cfg)`` build the symmetric factors in a
    given configuration.  The canonical term of ``m_Gamma`` lives in the
    first ``l(Gamma)`` variables, and setting the remaining variables to
    zero is a ring map, so each coefficient is computed with exactly
    ``l(Gamma)`` variables.
    """
    from .bases import AbstractPoly

    out = {}
    cache = {}
    for sp in enumerate_sector(Sector(*s)):
        n = max(len(sp), 1)
        if n not in cache:
            cfg = VarConfig(n)
            cache[n] = (cfg, make_a(cfg), make_b(cfg))
        cfg, a, b = cache[n]
        c = product_coefficient(a, b, canonical_key([part_slot(p) for p in sp], cfg))
        if c:
            out[sp] = c
    return AbstractPoly("m", out)


def canonical_key(slots: list, cfg: VarConfig):
    sign, key = _term_of(slots, range(len(slots)), cfg)
    return key


def monomial_explicit(sp: SuperPartition, cfg: VarConfig, truncate=False) -> ExplicitPoly:
    """``m_Lambda`` in ``cfg.n_vars`` variables.

    With ``truncate=True`` a monomial longer than the number of variables is
    returned as zero instead of raising.
    """
    if truncate and len(sp) > cfg.n_vars:
        return ExplicitPoly(cfg)
    return symmetrize([part_slot(p) for p in sp], cfg)


def permute_vars(f: ExplicitPoly, perm: list) -> ExplicitPoly:
    """Substitute variable ``i -> perm[i]`` (with its generators)."""
    cfg = f.config
    T = cfg.n_types
    out = {}
    for (e, m), c in f.terms.items():
        ne = [0] * cfg.n_vars
        for i, p in enumerate(e):
            ne[perm[i]] = p
        word = [perm[b // T] * T + b % T for b in _bits(m)]
        sign, mask = word_sign(word)
        key = (tuple(ne), mask)
        out[key] = out.get(key, 0) + sign * c
    return ExplicitPoly(cfg, out)


def is_symmetric(f: ExplicitPoly) -> bool:
    n = f.config.n_vars
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = i + 1, i
        if permute_vars(f, perm) != f:
            return False
    return True


# -- operators ------------------------------------------------------------------


def exterior_d(f: ExplicitPoly, kind="over") -> ExplicitPoly:
    """``sum_i g_i d/dx_i f`` with the generator ``g_i`` placed on the left.

    ``kind`` is ``"over"`` (phi), ``"under"`` (theta) or a generator offset.
    """
    cfg = f.config
    offset = {"over": 0, "under": 1}.get(kind, kind)
    out = {}
    for (e, m), c in f.terms.items():
        for i, p in enumerate(e):
            if not p:
                continue
            g = cfg.gen(i, offset)
            if m >> g & 1:
                continue
            ne = list(e)
            ne[i] -= 1
            v = c * p
            if (m & ((1 << g) - 1)).bit_count() & 1:
                v = -v
            key = (tuple(ne), m | (1 << g))
            out[key] = out.get(key, 0) + v
    return ExplicitPoly(cfg, out)


def top(f: ExplicitPoly) -> ExplicitPoly:
    """Reverse every anticommuting word: sign ``(-1)^(k(k-1)/2)``."""
    out = {}
    for (e, m), c in f.terms.items():
        k = m.bit_count()
        out[(e, m)] = -c if (k * (k - 1) // 2) & 1 else c
    return ExplicitPoly(f.config, out)


# -- extraction -----------------------------------------------------------------


def extract_coeffs(f: ExplicitPoly, labels: list, slots_of: Callable, check=True,
                   truncated=False) -> dict:
    """Coefficients of ``f`` on the monomials indexed by ``labels``.

    Each label's canonical term appears only in its own monomial, so the
    coefficient is read off directly; the sum is then rebuilt and compared.
    Monomials longer than the number of variables vanish; they are skipped
    when ``truncated`` is set and rejected otherwise.
    """
    cfg = f.config
    out = {}
    for lab in labels:
        slots = slots_of(lab)
        if len(slots) > cfg.n_vars:
            if truncated:
                continue
            raise UnstableVariableCount(
                f"{lab} has {len(slots)} parts but only {cfg.n_vars} variables")
        c = f.terms.get(canonical_key(slots, cfg), 0)
        if c != 0:
            out[lab] = c
    if check:
        rebuilt = ExplicitPoly(cfg)
        for lab, c in out.items():
            rebuilt = rebuilt + symmetrize(slots_of(lab), cfg).scale(c)
        if rebuilt != f:
            raise NotSymmetric("polynomial is not in the span of the given monomials")
    return out


def extract_m_coeffs(f: ExplicitPoly, s=None, check=True, truncated=False):
    """Expand a symmetric homogeneous ``f`` in the monomial basis.

    ``s`` is the sector; when omitted it is read off ``f``.  By default the
    number of variables must be at least the length of every superpartition
    of the sector, so that the expansion is the stable one.  ``truncated``
    accepts fewer variables and leaves out the monomials that vanish.
    """
    from .bases import AbstractPoly

    if f.is_zero():
        return AbstractPoly("m", {})
    if s is None:
        s = explicit_sector(f)
    s = Sector(*s)
    if not is_symmetric(f):
        raise NotSymmetric("polynomial is not invariant under variable exchange")
    labels = enumerate_sector(s)
    return AbstractPoly("m", extract_coeffs(f, labels, lambda sp: [part_slot(p) for p in sp],
                                           check, truncated))


def explicit_sector(f: ExplicitPoly) -> Sector:
    sectors = set()
    for e, m in f.terms:
        bits = _bits(m)
        sectors.add(Sector(sum(e), sum(1 for b in bits if b % 2 == 0),
                           sum(1 for b in bits if b % 2 == 1)))
    if len(sectors) != 1:
        raise NotSymmetric(f"not homogeneous: sectors {sorted(sectors)}")
    return sectors.pop()


# -- classical families and generators -----------------------------------------


def _compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def classical_h(n: int, cfg: VarConfig) -> ExplicitPoly:
    return ExplicitPoly(cfg, {(e, 0): Fraction(1) for e in _compositions(n, cfg.n_vars)})


def classical_e(n: int, cfg: VarConfig) -> ExplicitPoly:
    return ExplicitPoly(cfg, {(e, 0): Fraction(1) for e in _compositions(n, cfg.n_vars)
                              if max(e, default=0) <= 1})


def classical_p(n: int, cfg: VarConfig) -> ExplicitPoly:
    if n == 0:
        return ExplicitPoly.constant(cfg, cfg.n_vars)
    out = ExplicitPoly(cfg)
    for i in range(cfg.n_vars):
        out = out + ExplicitPoly.x(cfg, i, n)
    return out


def power_sum_explicit(offsets: tuple, n: int, cfg: VarConfig) -> ExplicitPoly:
    """``sum_i g_i^(offsets) x_i^n`` with the generators in the given order."""
    out = {}
    for i in range(cfg.n_vars):
        e = [0] * cfg.n_vars
        e[i] = n
        sign, mask = word_sign([cfg.gen(i, o) for o in offsets])
        if sign:
            out[(tuple(e), mask)] = out.get((tuple(e), mask), 0) + Fraction(sign)
    return ExplicitPoly(cfg, out)


_CLASSICAL = {"h": classical_h, "e": classical_e, "p": classical_p}


def generator_explicit(basis: str, mark: str, n: int, cfg: VarConfig) -> ExplicitPoly:
    """One-part generator of the p, h or e family.

    Power sums use the direct formula.  The h and e families apply the
    exterior derivatives to the classical ``h_{n+k}`` or ``e_{n+k}``.
    """
    if basis == "p":
        offs = {"": (), "o": (0,), "u": (1,), "b": (0, 1)}[mark]
        if mark == "" and n == 0:
            raise ValueError("p_0 is not a generator")
        return power_sum_explicit(offs, n, cfg)
    base = _CLASSICAL[basis]
    if mark == "":
        return base(n, cfg)
    if mark == "o":
        return exterior_d(base(n + 1, cfg), "over")
    if mark == "u":
        return exterior_d(base(n + 1, cfg), "under")
    if mark == "b":
        return exterior_d(exterior_d(base(n + 2, cfg), "under"), "over")
    raise ValueError(f"unknown mark {mark!r}")


def power_sum_by_derivative(mark: str, n: int, cfg: VarConfig) -> ExplicitPoly:
    """Power sums through the derivative route, normalized by ``n!/(n+k)!``."""
    if mark == "":
        return classical_p(n, cfg)
    if mark == "b":
        f = exterior_d(exterior_d(classical_p(n + 2, cfg), "under"), "over")
        return f.scale(Fraction(1, (n + 1) * (n + 2)))
    f = exterior_d(classical_p(n + 1, cfg), "over" if mark == "o" else "under")
    return f.scale(Fraction(1, n + 1))


def product_explicit(factors: list, cfg: VarConfig) -> ExplicitPoly:
    out = ExplicitPoly.constant(cfg)
    for f in factors:
        out = gmul(out, f)
    return out


def multiplicative_explicit(basis: str, sp: SuperPartition, cfg: VarConfig) -> ExplicitPoly:
    """``f_Lambda`` as the left-to-right product of explicit generators."""
    return product_explicit([generator_explicit(basis, p.mark, p.value, cfg) for p in sp], cfg)


# -- generating functions in explicit variables ---------------------------------
#
# Variable 0 is reserved for the two formal parameters: phi_0 plays tau_over
# and theta_0 plays tau_under, and x_0 never occurs.  The t-degree of a term
# equals its x-degree, so no separate t is needed.  Since tau sits first in the
# canonical order, the coefficient of tau^A f is read with tau on the left.


def _substituted_powers(cfg: VarConfig, var: int, kmax: int, keep):
    """Powers ``u^k`` of ``u = x_v + tau_o phi_v + tau_u theta_v``, ``k <= kmax``."""
    u = (ExplicitPoly.x(cfg, var)
         + gmul(ExplicitPoly.phi(cfg, 0), ExplicitPoly.phi(cfg, var))
         + gmul(ExplicitPoly.theta(cfg, 0), ExplicitPoly.theta(cfg, var)))
    powers = [ExplicitPoly.constant(cfg)]
    for _ in range(kmax):
        powers.append(gmul(powers[-1], u, keep))
    return powers


def substituted_series(coeffs: list, n_vars: int, t_max: int, combine="product") -> ExplicitPoly:
    """``F(t x + tau_o phi + tau_u theta)`` for ``F(u) = sum_k coeffs[k] u^k``.

    ``combine="product"`` builds ``prod_i F(u_i)``; ``"sum"`` builds ``sum_i F(u_i)``.
    """
    cfg = VarConfig(n_vars + 1)
    keep = lambda key: sum(key[0]) <= t_max  # noqa: E731
    total = ExplicitPoly.constant(cfg) if combine == "product" else ExplicitPoly(cfg)
    for v in range(1, n_vars + 1):
        pw = _substituted_powers(cfg, v, t_max + 2, keep)
        factor = ExplicitPoly(cfg)
        for k, c in enumerate(coeffs[: t_max + 3]):
            if c:
                factor = factor + pw[k].scale(c)
        total = gmul(total, factor, keep) if combine == "product" else total + factor
    return total


def master_operator(family: list, n_vars: int, t_max: int) -> ExplicitPoly:
    """Apply ``(1 + Dbar)(1 + Dunder)`` to ``G = sum t^n f_n`` and read ``dt -> tau``.

    ``family[n]`` is the classical ``f_n`` in ``n_vars`` variables.  The result
    is ``sum t^n (f_n + tau_o dbar f_{n+1} + tau_u dunder f_{n+1}
    - tau_o tau_u dbar dunder f_{n+2})`` in the layout of ``substituted_series``.
    """
    cfg = VarConfig(n_vars + 1)
    tau_o = ExplicitPoly.phi(cfg, 0)
    tau_u = ExplicitPoly.theta(cfg, 0)
    tau_ou = gmul(tau_o, tau_u)
    out = ExplicitPoly(cfg)
    for n in range(t_max + 1):
        pieces = [(None, family[n])]
        if n + 1 < len(family):
            pieces.append((tau_o, exterior_d(family[n + 1], "over")))
            pieces.append((tau_u, exterior_d(family[n + 1], "under")))
        if n + 2 < len(family):
            f = exterior_d(exterior_d(family[n + 2], "under"), "over")
            pieces.append((tau_ou, -f))
        for tau, f in pieces:
            lifted = lift(f, cfg)
            out = out + (lifted if tau is None else gmul(tau, lifted))
    return out


def lift(f: ExplicitPoly, cfg: VarConfig, shift: int = 1) -> ExplicitPoly:
    """Embed ``f`` into a larger configuration, moving variable ``i`` to ``i + shift``."""
    T = f.config.n_types
    out = {}
    for (e, m), c in f.terms.items():
        ne = [0] * cfg.n_vars
        for i, p in enumerate(e):
            ne[i + shift] = p
        out[(tuple(ne), m << (T * shift))] = c
    return ExplicitPoly(cfg, out)


def split_tau(f: ExplicitPoly) -> dict:
    """Split a series in the parameter layout into ``{tau_mask: poly in N vars}``.

    Keys are ``0``, ``1`` (tau_o), ``2`` (tau_u) and ``3`` (tau_o tau_u).
    """
    cfg = f.config
    small = VarConfig(cfg.n_vars - 1, cfg.n_types)
    T = cfg.n_types
    parts = {}
    for (e, m), c in f.terms.items():
        tau = m & ((1 << T) - 1)
        rest = m >> T
        parts.setdefault(tau, {})[(tuple(e[1:]), rest)] = c
    return {k: ExplicitPoly(small, v) for k, v in parts.items()}


def binomial_series(exponent, kmax: int) -> list:
    """Coefficients of ``(1 - u)^(-exponent)`` up to ``u^kmax``."""
    out = [Fraction(1)]
    c = Fraction(1)
    for k in range(kmax):
        c = c * (exponent + k) / (k + 1)
        out.append(c)
    return out


def homogeneous_part(f: ExplicitPoly, degree: int) -> ExplicitPoly:
    return ExplicitPoly(f.config, {k: c for k, c in f.terms.items() if sum(k[0]) == degree})

