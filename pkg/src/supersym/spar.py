"""Superpartitions with two kinds of fermionic marks.

A part carries an integer value and one of four marks:

    ""   plain
    "o"  overlined (carries a phi)
    "u"  underlined (carries a theta)
    "b"  bilined (carries both)

Parts are stored in canonical order: value descending, and among equal
values ``b > o > u > plain``.  The values of the ``o`` parts are pairwise
distinct, and so are the values of the ``u`` parts; bilined and plain parts
may repeat.  Plain zeros are dropped, marked zeros are kept.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

MARKS = ("", "u", "o", "b")
_RANK = {"": 0, "u": 1, "o": 2, "b": 3}
_TOKEN = re.compile(r"^(\d+)([oub]?)$")


class SuperPartitionError(ValueError):
    """Base class for malformed superpartitions."""


class ParseError(SuperPartitionError):
    def __init__(self, token: str, message: str = "cannot parse token"):
        super().__init__(f"{message}: {token!r}")
        self.token = token


class DistinctnessViolation(SuperPartitionError):
    pass


class OrderViolation(SuperPartitionError):
    pass


class _Annihilated:
    """Result of a part sum that vanishes (two marks of the same kind)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANNIHILATED"

    def __bool__(self):
        return False


ANNIHILATED = _Annihilated()


class Part(NamedTuple):
    value: int
    mark: str = ""

    @property
    def over(self) -> bool:
        return self.mark in ("o", "b")

    @property
    def under(self) -> bool:
        return self.mark in ("u", "b")

    @property
    def rank(self) -> int:
        return _RANK[self.mark]

    @property
    def odd(self) -> bool:
        """Parity of the generator attached to this part."""
        return self.mark in ("o", "u")

    @property
    def weight2(self) -> int:
        """Twice the weight: ``a``, ``a + 1/2`` or ``a + 1``."""
        return 2 * self.value + self.over + self.under

    def sort_key(self):
        return (self.value, _RANK[self.mark])

    def __str__(self):
        return f"{self.value}{self.mark}"

    @classmethod
    def from_flags(cls, value: int, over: bool, under: bool) -> "Part":
        mark = {(False, False): "", (True, False): "o",
                (False, True): "u", (True, True): "b"}[(bool(over), bool(under))]
        return cls(value, mark)


class Sector(NamedTuple):
    """Degree ``n`` with overlined count ``m_over`` and underlined count ``m_under``."""

    n: int
    m_over: int
    m_under: int

    def __str__(self):
        return f"({self.n}|{self.m_over},{self.m_under})"

    @classmethod
    def parse(cls, text: str) -> "Sector":
        raw = text.strip().strip("()").replace("|", ",")
        pieces = [t.strip() for t in raw.split(",")]
        if len(pieces) != 3:
            raise ParseError(text, "sector needs three integers n,m_over,m_under")
        values = []
        for t in pieces:
            if not t.isdigit():
                raise ParseError(t, "sector entry is not a non-negative integer")
            values.append(int(t))
        return cls(*values)


def _coerce_part(p) -> Part:
    if isinstance(p, Part):
        part = p
    elif isinstance(p, str):
        m = _TOKEN.match(p.strip())
        if not m:
            raise ParseError(p)
        part = Part(int(m.group(1)), m.group(2))
    else:
        value, mark = p
        part = Part(int(value), mark)
    if part.value < 0:
        raise SuperPartitionError(f"negative part value in {part}")
    if part.mark not in _RANK:
        raise ParseError(str(part.mark), "unknown mark")
    return part


@dataclass(frozen=True)
class SuperPartition:
    """Immutable superpartition in canonical order.  Build it with ``validate``."""

    parts: tuple

    def __iter__(self) -> Iterator[Part]:
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    def __repr__(self):
        return f"SuperPartition({self})"

    def __lt__(self, other):
        return self._cmp_key() < other._cmp_key()

    def _cmp_key(self):
        return tuple(p.sort_key() for p in self.parts)

    @property
    def size(self) -> int:
        """Total degree: sum of part values."""
        return sum(p.value for p in self.parts)

    @property
    def m_over(self) -> int:
        return sum(p.over for p in self.parts)

    @property
    def m_under(self) -> int:
        return sum(p.under for p in self.parts)

    @property
    def sector(self) -> Sector:
        return Sector(self.size, self.m_over, self.m_under)

    @property
    def fermion_count(self) -> int:
        return self.m_over + self.m_under

    def of_mark(self, mark: str) -> tuple:
        """Values of the parts carrying exactly ``mark``."""
        return tuple(p.value for p in self.parts if p.mark == mark)

    def multiplicities(self) -> dict:
        out = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def weights2(self) -> tuple:
        return tuple(p.weight2 for p in self.parts)

    def to_json(self) -> dict:
        return {"parts": [{"v": p.value, "m": p.mark} for p in self.parts]}


def validate(parts: Iterable) -> SuperPartition:
    """Check distinctness and return the canonical superpartition."""
    ps = [_coerce_part(p) for p in parts]
    ps = [p for p in ps if not (p.value == 0 and p.mark == "")]
    over = [p.value for p in ps if p.mark == "o"]
    under = [p.value for p in ps if p.mark == "u"]
    if len(set(over)) != len(over):
        raise DistinctnessViolation(f"repeated overlined value in {[str(p) for p in ps]}")
    if len(set(under)) != len(under):
        raise DistinctnessViolation(f"repeated underlined value in {[str(p) for p in ps]}")
    ps.sort(key=Part.sort_key, reverse=True)
    return SuperPartition(tuple(ps))


def parse(text: str) -> SuperPartition:
    """Parse ``"[2b,1o,0u]"``.  Brackets are optional; ``"[]"`` is empty."""
    body = text.strip()
    if body.startswith("[") != body.endswith("]"):
        raise ParseError(text, "unbalanced brackets")
    body = body.strip("[]").strip()
    if not body:
        return SuperPartition(())
    parts = []
    for tok in body.split(","):
        m = _TOKEN.match(tok.strip())
        if not m:
            raise ParseError(tok.strip())
        parts.append(Part(int(m.group(1)), m.group(2)))
    return validate(parts)


def format_spar(sp: SuperPartition) -> str:
    return str(sp)


def from_json(obj) -> SuperPartition:
    try:
        raw = obj["parts"]
        return validate(Part(int(d["v"]), d.get("m", "")) for d in raw)
    except (KeyError, TypeError) as exc:
        raise ParseError(str(obj), "malformed superpartition object") from exc


def sector(sp: SuperPartition) -> Sector:
    return sp.sector


# -- enumeration ---------------------------------------------------------------


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple]:
    """Ordinary partitions of ``n`` into positive parts, weakly decreasing."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def partitions_with_zeros(n: int, k: int) -> Iterator[tuple]:
    """Weakly decreasing tuples of exactly ``k`` non-negative integers summing to ``n``."""
    for lam in partitions(n):
        if len(lam) <= k:
            yield lam + (0,) * (k - len(lam))


def strict_sequences(total: int, k: int, below: int | None = None) -> Iterator[tuple]:
    """Strictly decreasing tuples of ``k`` non-negative integers summing to ``total``."""
    if below is None:
        below = total + 1
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, below - 1), k - 2, -1):
        if total - first < (k - 1) * (k - 2) // 2:
            continue
        for rest in strict_sequences(total - first, k - 1, first):
            yield (first,) + rest


def prefix_weights2(sp: SuperPartition, length: int) -> tuple:
    """Doubled prefix sums of weights, padded with the total to ``length``."""
    acc, out = 0, []
    for w in sp.weights2():
        acc += w
        out.append(acc)
    out.extend([acc] * (length - len(out)))
    return tuple(out)


def order_key(sp: SuperPartition, length: int):
    """Total order refining the weight order (larger key means larger)."""
    return (prefix_weights2(sp, length), sp._cmp_key())


def enumerate_sector(s) -> list:
    """All superpartitions of sector ``s``, sorted from largest to smallest.

    The listing is a linear extension of the weight order: if Omega is above
    Lambda in the weight order, Omega comes first.
    """
    n, mo, mu = Sector(*s)
    found = []
    for nb in range(min(mo, mu) + 1):
        no, nu = mo - nb, mu - nb
        for wb in range(n + 1):
            for bs in partitions_with_zeros(wb, nb):
                for wo in range(n - wb + 1):
                    for os_ in strict_sequences(wo, no):
                        for wu in range(n - wb - wo + 1):
                            for us in strict_sequences(wu, nu):
                                rest = n - wb - wo - wu
                                for lam in partitions(rest):
                                    parts = ([Part(v, "b") for v in bs]
                                             + [Part(v, "o") for v in os_]
                                             + [Part(v, "u") for v in us]
                                             + [Part(v, "") for v in lam])
                                    found.append(validate(parts))
    length = n + mo + mu + 1
    found.sort(key=lambda sp: order_key(sp, length), reverse=True)
    return found


def count_sector_series(max_n: int, max_over: int, max_under: int) -> dict:
    """Coefficients of the counting series, keyed by ``Sector``.

    Expands ``prod_{k>=0} (1+xi q^k)(1+gamma q^k) / ((1-xi gamma q^k)(1-q^{k+1}))``
    truncated at ``q^max_n``, ``xi^max_over``, ``gamma^max_under``.
    """
    # series as dict (n, a, b) -> int
    series = {(0, 0, 0): 1}

    def mul(f, g):
        out = {}
        for (n1, a1, b1), c1 in f.items():
            for (n2, a2, b2), c2 in g.items():
                key = (n1 + n2, a1 + a2, b1 + b2)
                if key[0] <= max_n and key[1] <= max_over and key[2] <= max_under:
                    out[key] = out.get(key, 0) + c1 * c2
        return out

    for k in range(max_n + 1):
        series = mul(series, {(0, 0, 0): 1, (k, 1, 0): 1})
        series = mul(series, {(0, 0, 0): 1, (k, 0, 1): 1})
        geo = {}
        j = 0
        while j * k <= max_n and j <= min(max_over, max_under):
            geo[(j * k, j, j)] = 1
            j += 1
        series = mul(series, geo)
        geo = {(j * (k + 1), 0, 0): 1 for j in range(max_n // (k + 1) + 1)}
        series = mul(series, geo)
    return {Sector(*k): v for k, v in series.items() if v}


# -- arithmetic ----------------------------------------------------------------


def add_parts(p: Part, q: Part):
    """Part sum: values add, marks merge; doubled marks give ``ANNIHILATED``."""
    if (p.over and q.over) or (p.under and q.under):
        return ANNIHILATED
    return Part.from_flags(p.value + q.value, p.over or q.over, p.under or q.under)


def add_superpartitions(a: SuperPartition, b: SuperPartition):
    """Row-by-row sum after padding with plain zeros."""
    length = max(len(a), len(b))
    zero = Part(0, "")
    pa = list(a.parts) + [zero] * (length - len(a))
    pb = list(b.parts) + [zero] * (length - len(b))
    rows = []
    for x, y in zip(pa, pb):
        r = add_parts(x, y)
        if r is ANNIHILATED:
            return ANNIHILATED
        rows.append(r)
    try:
        return validate(rows)
    except DistinctnessViolation:
        return ANNIHILATED


class WeightCmp(enum.Enum):
    GREATER = "Greater"
    LESS = "Less"
    EQUAL_PREFIX_SUMS = "EqualPrefixSums"
    INCOMPARABLE = "Incomparable"


def weight_compare(a: SuperPartition, b: SuperPartition) -> WeightCmp:
    """Compare by dominance of doubled weight prefix sums within one sector."""
    if a.sector != b.sector:
        return WeightCmp.INCOMPARABLE
    length = max(len(a), len(b))
    pa, pb = prefix_weights2(a, length), prefix_weights2(b, length)
    ge = all(x >= y for x, y in zip(pa, pb))
    le = all(x <= y for x, y in zip(pa, pb))
    if ge and le:
        return WeightCmp.EQUAL_PREFIX_SUMS
    if ge:
        return WeightCmp.GREATER
    if le:
        return WeightCmp.LESS
    return WeightCmp.INCOMPARABLE


def insert_part(sp: SuperPartition, p) -> SuperPartition:
    """Insert ``p`` after every part of weight at least ``w(p)``.

    Parts of equal weight have equal prefix contributions, so the result is
    returned in canonical order.  A clash of marks raises ``OrderViolation``.
    """
    p = _coerce_part(p)
    w = p.weight2
    k = 0
    while k < len(sp) and sp[k].weight2 >= w:
        k += 1
    parts = list(sp.parts[:k]) + [p] + list(sp.parts[k:])
    try:
        return validate(parts)
    except DistinctnessViolation as exc:
        raise OrderViolation(str(exc)) from exc
