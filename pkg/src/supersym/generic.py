"""Superpartitions and bases with an arbitrary number of fermion types.

A part ``a^{T}`` has a value ``a`` and a content ``T``, a subset of
``{1..n_types}``.  Inside a variable the generators are written in
decreasing type order, so ``theta_i^{T}`` for ``T = {3,1}`` is
``theta_i^(3) theta_i^(1)``.  With two types, type 2 plays the role of phi
(over) and type 1 of theta (under), which makes the word order coincide
with ``phi_1 theta_1 phi_2 theta_2 ...``.

No combinatorial product rule is used here: every basis change goes
through explicit variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .coeffs import invert, matmul
from .grassmann import (ExplicitPoly, VarConfig, classical_e, classical_h,
                        exterior_d, extract_coeffs, gmul, symmetrize, word_sign)
from .spar import (Part, ParseError, Sector, SuperPartition, enumerate_sector,
                   partitions, partitions_with_zeros, strict_sequences, validate)
from .transforms import Report, kernel_series


class NDistinctnessViolation(ValueError):
    pass


@dataclass(frozen=True, order=True)
class NPart:
    value: int
    content: tuple = ()  # types in decreasing order

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("negative value")
        if tuple(sorted(set(self.content), reverse=True)) != tuple(self.content):
            object.__setattr__(self, "content", tuple(sorted(set(self.content), reverse=True)))

    @property
    def m(self) -> int:
        return len(self.content)

    def sort_key(self):
        return (self.value, self.m, self.content)

    def weight2(self) -> int:
        return 2 * self.value + self.m

    def __str__(self):
        if not self.content:
            return str(self.value)
        return f"{self.value}^{{{','.join(map(str, self.content))}}}"

    def to_json(self):
        return {"v": self.value, "T": list(self.content)}


@dataclass(frozen=True)
class NSuperPartition:
    n_types: int
    parts: tuple

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    __repr__ = __str__

    @property
    def size(self) -> int:
        return sum(p.value for p in self.parts)

    @property
    def fermion_degree(self) -> int:
        """``M``: total number of anticommuting generators."""
        return sum(p.m for p in self.parts)

    def multidegree(self) -> tuple:
        """Number of parts containing each type ``1..n_types``."""
        return tuple(sum(1 for p in self.parts if t in p.content) for t in range(1, self.n_types + 1))

    def constituents(self) -> dict:
        out = {}
        for p in self.parts:
            out.setdefault(p.content, []).append(p.value)
        return out

    def to_json(self):
        return {"n_types": self.n_types, "parts": [p.to_json() for p in self.parts]}


def n_validate(n_types: int, parts) -> NSuperPartition:
    ps = []
    for p in parts:
        if not isinstance(p, NPart):
            value, content = p
            p = NPart(int(value), tuple(content))
        if any(t < 1 or t > n_types for t in p.content):
            raise ValueError(f"content {p.content} outside 1..{n_types}")
        if p.value == 0 and not p.content:
            continue
        ps.append(p)
    for content, values in _group(ps).items():
        if len(content) % 2 == 1 and len(set(values)) != len(values):
            raise NDistinctnessViolation(f"repeated value in odd constituent {content}")
    ps.sort(key=NPart.sort_key, reverse=True)
    return NSuperPartition(n_types, tuple(ps))


def _group(ps):
    out = {}
    for p in ps:
        out.setdefault(p.content, []).append(p.value)
    return out


_NTOKEN = re.compile(r"^(\d+)(?:\^\{([\d,\s]*)\})?$")


def n_parse(n_types: int, text: str) -> NSuperPartition:
    """Parse ``"[5^{2,1},4,0^{3}]"``."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    tokens = re.findall(r"\d+(?:\^\{[^}]*\})?|[^,\s]+", body)
    parts = []
    for tok in tokens:
        m = _NTOKEN.match(tok)
        if not m:
            raise ParseError(tok)
        content = tuple(int(x) for x in m.group(2).split(",") if x.strip()) if m.group(2) else ()
        parts.append(NPart(int(m.group(1)), content))
    return n_validate(n_types, parts)


def contents(n_types: int) -> list:
    """Nonempty contents, each in decreasing order."""
    out = []
    for k in range(1, n_types + 1):
        for c in combinations(range(n_types, 0, -1), k):
            out.append(tuple(c))
    return out


def _order_key(sp: NSuperPartition, length: int):
    acc, pref = 0, []
    for p in sp.parts:
        acc += p.weight2()
        pref.append(acc)
    pref.extend([acc] * (length - len(pref)))
    return (tuple(pref), tuple(p.sort_key() for p in sp.parts))


def n_enumerate(n: int, multidegree: tuple) -> list:
    """All superpartitions of total value ``n`` with ``multidegree[t-1]`` parts containing ``t``."""
    n_types = len(multidegree)
    cs = contents(n_types)
    found = []

    def counts(i, remaining, chosen):
        if i == len(cs):
            if not any(remaining):
                yield dict(chosen)
            return
        c = cs[i]
        cap = min(remaining[t - 1] for t in c)
        for k in range(cap + 1):
            rem = list(remaining)
            for t in c:
                rem[t - 1] -= k
            chosen[c] = k
            yield from counts(i + 1, rem, chosen)
        del chosen[c]

    def values(items, budget):
        if not items:
            for lam in partitions(budget):
                yield [NPart(v) for v in lam]
            return
        (c, k), rest = items[0], items[1:]
        for w in range(budget + 1):
            seqs = strict_sequences(w, k) if len(c) % 2 else partitions_with_zeros(w, k)
            for seq in seqs:
                for tail in values(rest, budget - w):
                    yield [NPart(v, c) for v in seq] + tail

    for chosen in counts(0, list(multidegree), {}):
        items = [(c, k) for c, k in chosen.items() if k]
        for parts in values(items, n):
            found.append(n_validate(n_types, parts))
    length = n + sum(multidegree) + 1
    found.sort(key=lambda sp: _order_key(sp, length), reverse=True)
    return found


def n_count_series(n_types: int, max_n: int, max_degree: tuple) -> dict:
    """Coefficients of ``prod_k 1/(1-q^{k+1}) prod_{T odd}(1+u_T q^k) / prod_{T even}(1-u_T q^k)``."""
    cs = contents(n_types)

    def fits(key):
        return key[0] <= max_n and all(a <= b for a, b in zip(key[1:], max_degree))

    def mul(f, g):
        out = {}
        for k1, c1 in f.items():
            for k2, c2 in g.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                if fits(key):
                    out[key] = out.get(key, 0) + c1 * c2
        return out

    unit = (0,) * (n_types + 1)
    series = {unit: 1}
    for k in range(max_n + 1):
        for c in cs:
            step = (k,) + tuple(int(t in c) for t in range(1, n_types + 1))
            if len(c) % 2:
                factor = {unit: 1, step: 1}
            else:
                factor, j = {}, 0
                while True:
                    key = tuple(j * s for s in step)
                    if not fits(key):
                        break
                    factor[key] = 1
                    j += 1
                    if not any(step):
                        break
            series = mul(series, factor)
        geo = {(j * (k + 1),) + (0,) * n_types: 1 for j in range(max_n // (k + 1) + 1)}
        series = mul(series, geo)
    return {key: v for key, v in series.items() if v}


# -- dictionary with the two-type theory --------------------------------------------

_TO_MARK = {(): "", (2,): "o", (1,): "u", (2, 1): "b"}
_FROM_MARK = {v: k for k, v in _TO_MARK.items()}


def from_n2(sp: SuperPartition) -> NSuperPartition:
    return n_validate(2, [NPart(p.value, _FROM_MARK[p.mark]) for p in sp])


def to_n2(sp: NSuperPartition) -> SuperPartition:
    if sp.n_types != 2:
        raise ValueError("only two-type superpartitions map to marks")
    return validate([Part(p.value, _TO_MARK[p.content]) for p in sp])


def sector_multidegree(s) -> tuple:
    """``(n|m_over, m_under)`` as ``(n, (m_type1, m_type2)) = (n, (m_under, m_over))``."""
    s = Sector(*s)
    return s.n, (s.m_under, s.m_over)


# -- explicit variables ------------------------------------------------------------


def n_slot(p: NPart, n_types: int) -> tuple:
    return (p.value, tuple(n_types - t for t in p.content))


def n_config(n_vars: int, n_types: int) -> VarConfig:
    return VarConfig(n_vars, n_types)


def n_monomial_explicit(sp: NSuperPartition, cfg: VarConfig) -> ExplicitPoly:
    return symmetrize([n_slot(p, sp.n_types) for p in sp], cfg)


def n_power_sum(part: NPart, cfg: VarConfig) -> ExplicitPoly:
    """``sum_i theta_i^{T} x_i^n`` directly."""
    T = cfg.n_types
    out = {}
    for i in range(cfg.n_vars):
        e = [0] * cfg.n_vars
        e[i] = part.value
        sign, mask = word_sign([cfg.gen(i, T - t) for t in part.content])
        out[(tuple(e), mask)] = Fraction(sign)
    return ExplicitPoly(cfg, out)


def d_content(f: ExplicitPoly, content: tuple) -> ExplicitPoly:
    """``d^{T} f``: derivatives for the types of ``T``, the largest type leftmost."""
    T = f.config.n_types
    for t in sorted(content):
        f = exterior_d(f, T - t)
    return f


def n_power_sum_by_derivative(part: NPart, cfg: VarConfig) -> ExplicitPoly:
    from .grassmann import classical_p
    n, m = part.value, part.m
    f = d_content(classical_p(n + m, cfg), part.content)
    return f.scale(Fraction(factorial(n), factorial(n + m)))


def n_generator(family: str, part: NPart, cfg: VarConfig) -> ExplicitPoly:
    if family == "p":
        return n_power_sum(part, cfg)
    base = {"h": classical_h, "e": classical_e}[family]
    return d_content(base(part.value + part.m, cfg), part.content)


def n_multiplicative_explicit(family: str, sp: NSuperPartition, cfg: VarConfig) -> ExplicitPoly:
    out = ExplicitPoly.constant(cfg)
    for p in sp:
        out = gmul(out, n_generator(family, p, cfg))
    return out


def n_extract(f: ExplicitPoly, n: int, multidegree: tuple) -> dict:
    labels = n_enumerate(n, multidegree)
    T = len(multidegree)
    return extract_coeffs(f, labels, lambda sp: [n_slot(p, T) for p in sp])


def stable_vars(n: int, multidegree: tuple) -> int:
    return max([len(sp) for sp in n_enumerate(n, multidegree)] + [1])


# -- scalar product ------------------------------------------------------------------


def z_constituent(values: list, m: int) -> Fraction:
    """``prod_k n(k)! (k!/(k+m-1)!)^{n(k)}`` for one constituent partition."""
    out = Fraction(1)
    mult = {}
    for v in values:
        mult[v] = mult.get(v, 0) + 1
    for k, nk in mult.items():
        out *= factorial(nk) * Fraction(factorial(k), factorial(k + m - 1)) ** nk
    return out


def n_norm(sp: NSuperPartition):
    """``(z_Lambda, top_sign)`` with ``top_sign = (-1)^C(M,2)``."""
    z = Fraction(1)
    for content, values in sp.constituents().items():
        z *= z_constituent(values, len(content))
    sign = -1 if comb(sp.fermion_degree, 2) & 1 else 1
    return z, sign


def n_transition_to_m(family: str, n: int, multidegree: tuple, n_vars=None) -> list:
    """Rows of ``M(family, m)`` computed in explicit variables."""
    labels = n_enumerate(n, multidegree)
    cfg = VarConfig(n_vars or stable_vars(n, multidegree), len(multidegree))
    rows = []
    for lam in labels:
        coeffs = n_extract(n_multiplicative_explicit(family, lam, cfg), n, multidegree)
        rows.append([coeffs.get(g, Fraction(0)) for g in labels])
    return rows


def n_duality(n: int, multidegree: tuple, n_vars=None) -> list:
    """Gram matrix ``<m_i^T | h_j>`` with every conversion done in explicit variables."""
    labels = n_enumerate(n, multidegree)
    if not labels:
        return []
    p_m = n_transition_to_m("p", n, multidegree, n_vars)
    h_m = n_transition_to_m("h", n, multidegree, n_vars)
    m_p = invert(p_m)
    h_p = matmul(h_m, m_p)
    z = [n_norm(sp)[0] for sp in labels]
    return [[sum((m_p[i][k] * h_p[j][k] * z[k] for k in range(len(labels))), Fraction(0))
             for j in range(len(labels))] for i in range(len(labels))]


def n_duality_check(n: int, multidegree: tuple, n_vars=None) -> Report:
    rep = Report("generic-n duality", f"n={n},degree={list(multidegree)}")
    labels = n_enumerate(n, multidegree)
    for i, row in enumerate(n_duality(n, multidegree, n_vars)):
        for j, x in enumerate(row):
            if x != (1 if i == j else 0):
                rep.add(f"{labels[i]},{labels[j]}", x, int(i == j))
    return rep


def n_kernel_check(bound: int, n_types: int = 3, n_vars: int = 2, max_fermions: int = 2) -> Report:
    """Truncated kernel against ``sum z^-1 (-1)^C(M,2) p_L(x) p_L(y)``.

    Keeps terms with x-degree ``<= bound`` and at most ``max_fermions``
    generators on the first alphabet.
    """
    rep = Report("generic-n kernel", f"N={n_types},deg<={bound},M<={max_fermions},vars={n_vars}")
    caps = (max_fermions,) * n_types
    lhs = kernel_series(n_vars, bound, caps, n_types=n_types, max_total=max_fermions)
    cfg = lhs.config
    rhs = ExplicitPoly(cfg)
    for n in range(bound + 1):
        for deg in _multidegrees(n_types, max_fermions):
            for sp in n_enumerate(n, deg):
                z, sign = n_norm(sp)
                px = _side_product(sp, cfg, 0, n_vars)
                py = _side_product(sp, cfg, n_vars, n_vars)
                rhs = rhs + gmul(px, py).scale(Fraction(sign) / z)
    diff = lhs - rhs
    for key in sorted(diff.terms, key=str)[:20]:
        rep.add(key, lhs.terms.get(key, 0), rhs.terms.get(key, 0))
    return rep


def _multidegrees(n_types: int, max_total: int):
    """Multidegrees reachable with at most ``max_total`` generators."""
    def rec(i, left):
        if i == n_types:
            yield ()
            return
        for k in range(left + 1):
            for rest in rec(i + 1, left - k):
                yield (k,) + rest
    return list(rec(0, max_total))


def _side_product(sp: NSuperPartition, cfg: VarConfig, first: int, count: int) -> ExplicitPoly:
    T = cfg.n_types
    out = ExplicitPoly.constant(cfg)
    for p in sp:
        term = ExplicitPoly(cfg)
        for i in range(first, first + count):
            e = [0] * cfg.n_vars
            e[i] = p.value
            sign, mask = word_sign([cfg.gen(i, T - t) for t in p.content])
            term = term + ExplicitPoly(cfg, {(tuple(e), mask): Fraction(sign)})
        out = gmul(out, term)
    return out


# -- two-type specialization ------------------------------------------------------------


def specialization_check(s) -> Report:
    """Compare the generic pipeline at two types with the mark-based one on sector ``s``."""
    from .bases import multiplicative_expand, top_sign, z_factor, zeta_factor
    from .grassmann import monomial_explicit

    s = Sector(*s)
    rep = Report("generic-n specialization", str(s))
    n, deg = sector_multidegree(s)
    core = enumerate_sector(s)
    generic = n_enumerate(n, deg)
    if [from_n2(sp) for sp in core] != generic:
        rep.add("enumeration", [str(x) for x in core], [str(x) for x in generic])
        return rep
    if not core:
        return rep
    N = stable_vars(n, deg)
    cfg = VarConfig(N, 2)
    for lam, glam in zip(core, generic):
        if monomial_explicit(lam, cfg) != n_monomial_explicit(glam, cfg):
            rep.add(f"monomial {lam}", "core", "generic")
        z, sign = n_norm(glam)
        if z != z_factor(lam) * zeta_factor(lam) or sign != top_sign(lam):
            rep.add(f"norm {lam}", z_factor(lam) * zeta_factor(lam), z)
    for family in ("p", "h", "e"):
        rows = n_transition_to_m(family, n, deg, N)
        for i, lam in enumerate(core):
            want = multiplicative_expand(family, lam)
            for j, gam in enumerate(core):
                if rows[i][j] != want[gam]:
                    rep.add(f"{family}{lam}->m{gam}", want[gam], rows[i][j])
    return rep


def norm_reduction_check(n_max: int) -> Report:
    """``z`` of plain constituents is the classical ``z``, of two-type ones the ``zeta`` factor."""
    from .bases import z_factor, zeta_factor
    rep = Report("generic-n norm reductions", f"n<={n_max}")
    for n in range(n_max + 1):
        for lam in partitions(n):
            plain = validate([Part(v, "") for v in lam])
            if z_constituent(list(lam), 0) != z_factor(plain):
                rep.add(f"z{list(lam)}", z_constituent(list(lam), 0), z_factor(plain))
            both = validate([Part(v, "b") for v in lam])
            if z_constituent(list(lam), 2) != zeta_factor(both):
                rep.add(f"zeta{list(lam)}", z_constituent(list(lam), 2), zeta_factor(both))
            if len(set(lam)) == len(lam) and z_constituent(list(lam), 1) != 1:
                rep.add(f"odd{list(lam)}", z_constituent(list(lam), 1), 1)
    return rep
