import json
from fractions import Fraction as F

import pytest

from supersym.bases import AbstractPoly, top_sign, z_factor, zeta_factor
from supersym.coeffs import ALPHA, SingularMatrix, format_coeff, invert, parse_coeff
from supersym.spar import Sector, enumerate_sector, parse
from supersym.transforms import (Report, SectorMismatch, compact_transition, convert,
                                 duality_gram, inner_product, kernel_check, omega_hat,
                                 routes_check, top, transition)


def test_transition_roundtrip():
    s = Sector(2, 1, 1)
    a = transition(s, "h", "p").rows()
    b = transition(s, "p", "h").rows()
    n = len(a)
    for i in range(n):
        for j in range(n):
            assert sum(a[i][k] * b[k][j] for k in range(n)) == (1 if i == j else 0)


def test_transition_apply_matches_convert():
    s = (3, 1, 0)
    M = transition(s, "e", "m")
    lam = enumerate_sector(s)[2]
    assert M.apply({lam: 1}) == dict(convert(AbstractPoly.single("e", lam), "m").coeffs)


def test_p_to_m_first_row():
    M = transition((1, 1, 1), "p", "m")
    assert M.row(parse("[1b]")) == {parse("[1b]"): 1}


def test_g_requires_alpha():
    with pytest.raises(ValueError):
        transition((1, 1, 0), "g", "m")


@pytest.mark.parametrize("basis", ["h", "e"])
@pytest.mark.parametrize("s", [(2, 1, 1), (3, 1, 1), (4, 1, 0), (3, 2, 1)])
def test_two_routes_to_power_sums(basis, s):
    assert routes_check(s, basis).ok


def test_g_routes_symbolic():
    assert routes_check((2, 1, 1), "g", ALPHA).ok
    assert compact_transition((1, 1, 0), "g", F(3)).entries


def test_self_duality_of_power_sums():
    for n in range(5):
        for a in range(3):
            for b in range(3):
                for sp in enumerate_sector((n, a, b)):
                    p = AbstractPoly.single("p", sp)
                    assert inner_product(top(p), p) == z_factor(sp) * zeta_factor(sp)
                    assert inner_product(p, p) == top_sign(sp) * z_factor(sp) * zeta_factor(sp)


def test_inner_product_sector_mismatch():
    with pytest.raises(SectorMismatch):
        inner_product(AbstractPoly.single("m", parse("[1o]")), AbstractPoly.single("h", parse("[1u]")))


def test_m_h_pairing_from_cli_example():
    lam = parse("[2o,0o,0u]")
    m = AbstractPoly.single("m", lam)
    for om in enumerate_sector(lam.sector):
        want = top_sign(lam) if om == lam else 0
        assert inner_product(m, AbstractPoly.single("h", om)) == want


def test_gram_identity_small_sector():
    assert duality_gram((0, 0, 0)) == [[1]]
    g = duality_gram((2, 1, 1), ("m", "g"), F(5, 7))
    assert g == [[int(i == j) for j in range(11)] for i in range(11)]


def test_omega_swaps_families():
    h = AbstractPoly.single("h", parse("[2o,1u]"))
    assert omega_hat(h) == AbstractPoly.single("e", parse("[2o,1u]"))
    assert omega_hat(h, via_p=True) == convert(omega_hat(h), "p")


def test_kernel_small():
    assert kernel_check(1, 2).ok
    assert kernel_check(1, 2, F(1, 3)).ok


def test_report_json():
    r = Report("x", "(1|0,0)")
    assert json.loads(r.dumps())["status"] == "pass"
    r.add("k", F(1, 2), 0)
    assert r.to_json()["mismatches"] == [{"key": "k", "lhs": "1/2", "rhs": "0/1"}]


def test_coefficient_serialization_roundtrip():
    for c in (F(-3, 4), F(0), F(7)):
        assert parse_coeff(format_coeff(c)) == c
    x = (ALPHA + 1) / (ALPHA ** 2)
    assert parse_coeff(format_coeff(x)) == x


def test_singular_matrix():
    with pytest.raises(SingularMatrix):
        invert([[1, 2], [2, 4]])
