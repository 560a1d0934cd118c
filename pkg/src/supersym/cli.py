"""Command-line front end.

    supersym spar list|count --sector n,mo,mu
    supersym expand --basis p|h|e|g --spar "[2o,0o,0u]" [--alpha r]
    supersym convert --from B1 --to B2 --input file|-
    supersym inner --left f --right g [--alpha r]
    supersym verify kernel|duality|involution|triangularity|table2|generic-n --bound k

Everything except ``spar`` writes one JSON document carrying
``"schema": "supersym/1"``.  Exit status is 2 for unparsable input, 1 for a
failed verification and 0 otherwise.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .bases import BASES, AbstractPoly
from .coeffs import CoefficientParseError, format_coeff, parse_alpha, parse_coeff
from .spar import ParseError, Sector, SuperPartitionError, enumerate_sector, parse

SCHEMA = "supersym/1"
CHECKS = ("kernel", "duality", "involution", "triangularity", "table2", "generic-n")


class UsageError(Exception):
    pass


# -- expressions --------------------------------------------------------------------

_EXPR_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<coeff>\d+(?:/\d+)?|\([^()]*(?:\([^()]*\)[^()]*)*\))\s*\*?"
                         r"|(?P<elem>[a-z]\s*\[[^\]]*\]))")


def parse_expression(text: str, alpha=None) -> AbstractPoly:
    """Parse ``"2*p[2o,0o,0u] - 1/3 h[1b]"``.

    All terms must share one basis; a bare number multiplies the element
    that follows it.
    """
    pos, sign, coeff = 0, 1, None
    terms = []
    basis = None
    text = text.strip()
    if not text:
        raise ParseError(text, "empty expression")
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = text[pos:].split()[0] if text[pos:].split() else text[pos:]
            raise ParseError(bad, "unexpected token")
        pos = m.end()
        if m.group("sign"):
            if m.group("sign") == "-":
                sign = -sign
        elif m.group("coeff"):
            if coeff is not None:
                raise ParseError(m.group("coeff"), "two coefficients in a row")
            coeff = parse_coeff(m.group("coeff").strip())
        else:
            elem = m.group("elem")
            b = elem[0]
            if b not in BASES:
                raise ParseError(elem, "unknown basis")
            if basis is not None and b != basis:
                raise ParseError(elem, "mixed bases in one expression")
            basis = b
            c = sign * (coeff if coeff is not None else Fraction(1))
            terms.append((parse(elem[1:].strip()), c))
            sign, coeff = 1, None
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if coeff is not None:
        raise ParseError(str(coeff), "coefficient without an element")
    if basis == "g" and alpha is None:
        raise UsageError("the g basis needs --alpha")
    out = {}
    for sp, c in terms:
        out[sp] = out.get(sp, 0) + c
    return AbstractPoly(basis, out, alpha)


def poly_to_json(f: AbstractPoly) -> list:
    return [{"spar": str(sp), "coeff": format_coeff(c)} for sp, c in f.items()]


def load_poly(text: str, basis=None, alpha=None) -> AbstractPoly:
    """A JSON document (``{"basis", "terms": [{"spar", "coeff"}]}``) or an expression."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(stripped[exc.pos:exc.pos + 10] or stripped, "invalid JSON") from exc
        b = doc.get("basis", basis)
        if b not in BASES:
            raise ParseError(str(b), "unknown basis")
        if b == "g" and alpha is None and doc.get("alpha") is not None:
            alpha = parse_alpha(str(doc["alpha"]))
        if b == "g" and alpha is None:
            raise UsageError("the g basis needs --alpha")
        terms = doc.get("terms", [])
        out = {}
        for t in terms:
            sp = parse(str(t["spar"]))
            out[sp] = out.get(sp, 0) + parse_coeff(t.get("coeff", "1"))
        return AbstractPoly(b, out, alpha)
    f = parse_expression(stripped, alpha)
    if basis is not None and f.basis != basis:
        raise ParseError(f.basis, f"expected basis {basis}")
    return f


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError:
        return source  # treat as an inline expression


# -- verbs ------------------------------------------------------------------------------


def _emit(doc, out):
    doc = {"schema": SCHEMA, **doc}
    out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def cmd_spar(args, out):
    s = Sector.parse(args.sector)
    sps = enumerate_sector(s)
    if args.json:
        doc = {"sector": str(s), "count": len(sps)}
        if args.action == "list":
            doc["superpartitions"] = [str(sp) for sp in sps]
        _emit(doc, out)
    elif args.action == "count":
        out.write(f"{len(sps)}\n")
    else:
        for sp in sps:
            out.write(f"{sp}\n")
    return 0


def cmd_expand(args, out):
    from .bases import multiplicative_expand
    alpha = parse_alpha(args.alpha) if args.alpha is not None else None
    if args.basis == "g" and alpha is None:
        raise UsageError("the g basis needs --alpha")
    sp = parse(args.spar)
    if args.basis == "m":
        f = AbstractPoly.single("m", sp)
    else:
        f = multiplicative_expand(args.basis, sp, alpha if args.basis == "g" else None)
    _emit({"basis": args.basis, "spar": str(sp), "sector": str(sp.sector),
           "alpha": None if alpha is None else format_coeff(alpha),
           "m": poly_to_json(f)}, out)
    return 0


def cmd_convert(args, out):
    from .transforms import convert
    alpha = parse_alpha(args.alpha) if args.alpha is not None else None
    if "g" in (args.frm, args.to) and alpha is None:
        raise UsageError("the g basis needs --alpha")
    f = load_poly(_read(args.input), args.frm, alpha)
    g = convert(f, args.to, alpha)
    _emit({"from": args.frm, "to": args.to,
           "alpha": None if alpha is None else format_coeff(alpha),
           "terms": poly_to_json(g)}, out)
    return 0


def cmd_inner(args, out):
    from .transforms import inner_product
    alpha = parse_alpha(args.alpha) if args.alpha is not None else None
    f = load_poly(_read(args.left), None, alpha)
    g = load_poly(_read(args.right), None, alpha)
    value = inner_product(f, g, alpha)
    _emit({"left": poly_to_json(f), "right": poly_to_json(g), "left_basis": f.basis,
           "right_basis": g.basis, "alpha": None if alpha is None else format_coeff(alpha),
           "value": format_coeff(value)}, out)
    return 0


def _sectors(n_max, m_max=2):
    return [(n, a, b) for n in range(n_max + 1) for a in range(m_max + 1) for b in range(m_max + 1)]


def run_check(check: str, bound: int, alpha=None) -> list:
    """Reports for one ``verify`` check, in canonical order."""
    from . import transforms as T
    if check == "kernel":
        reps = [T.kernel_check(bound, 3)]
        if alpha is not None:
            reps.append(T.kernel_check(bound, 3, alpha))
        return reps
    if check == "duality":
        reps = [T.duality_check(s) for s in _sectors(bound)]
        if alpha is not None:
            reps += [T.duality_check(s, ("m", "g"), alpha) for s in _sectors(min(bound, 2), 1)]
        return reps
    if check == "involution":
        reps = [T.involution_check(s) for s in _sectors(bound)]
        if alpha is not None:
            reps += [T.involution_check(s, alpha) for s in _sectors(min(bound, 3), 1)]
        return reps
    if check == "triangularity":
        return [T.triangularity_check(s) for s in _sectors(bound)]
    if check == "table2":
        return T.table2_rows(bound, "p") + T.table2_rows(bound, "m") + T.genfun_identities(bound)
    if check == "generic-n":
        from . import generic as G
        reps = [G.specialization_check(s) for s in _sectors(bound)]
        reps.append(G.n_kernel_check(min(bound, 1), 3, 2, 2))
        for n in range(min(bound, 1) + 1):
            for deg in G._multidegrees(3, 2):
                reps.append(G.n_duality_check(n, deg))
        reps.append(G.norm_reduction_check(bound))
        return reps
    raise UsageError(f"unknown check {check!r}")


def cmd_verify(args, out):
    alpha = parse_alpha(args.alpha) if args.alpha is not None else None
    reports = run_check(args.check, args.bound, alpha)
    ok = all(r.ok for r in reports)
    _emit({"check": args.check, "bound": args.bound,
           "alpha": None if alpha is None else format_coeff(alpha),
           "status": "pass" if ok else "fail",
           "reports": [r.to_json() for r in reports]}, out)
    return 0 if ok else 1


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="supersym", description="N=2 symmetric superpolynomials")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("spar", help="list or count a sector")
    p.add_argument("action", choices=("list", "count"))
    p.add_argument("--sector", required=True, help="n,m_over,m_under")
    p.add_argument("--json", action="store_true", help="wrap the output in a JSON document")
    p.set_defaults(func=cmd_spar)

    p = sub.add_parser("expand", help="monomial expansion of a basis element")
    p.add_argument("--basis", required=True, choices=BASES)
    p.add_argument("--spar", required=True)
    p.add_argument("--alpha")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("convert", help="change basis")
    p.add_argument("--from", dest="frm", required=True, choices=BASES)
    p.add_argument("--to", required=True, choices=BASES)
    p.add_argument("--input", required=True, help="file, '-' for stdin, or an inline expression")
    p.add_argument("--alpha")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("inner", help="scalar product")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--alpha")
    p.set_defaults(func=cmd_inner)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--alpha")
    p.set_defaults(func=cmd_verify)
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ParseError, CoefficientParseError) as exc:
        err.write(f"parse error: {exc}\n")
        return 2
    except (SuperPartitionError, UsageError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
