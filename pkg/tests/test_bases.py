from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supersym.bases import (AbstractPoly, BasisMismatch, compact_in_p, concat, diagonal_factor,
                            generator_in_m, hep_recursions, monomial_product, mul_m,
                            multiplicative_expand, omega_sign, over_first_sign, top_sign,
                            z_factor, zeta_factor)
from supersym.grassmann import VarConfig, extract_m_coeffs, multiplicative_explicit
from supersym.spar import Sector, enumerate_sector, parse
from supersym.transforms import convert

SMALL = [sp for n in range(3) for a in range(2) for b in range(2)
         for sp in enumerate_sector((n, a, b))]


def m(text, c=1):
    return AbstractPoly.single("m", parse(text), F(c))


def test_norm_factors():
    sp = parse("[2b,1b,1b,2,2,1o]")
    assert z_factor(sp) == 8
    assert zeta_factor(sp) == F(1, 3) * F(2, 4)
    assert top_sign(parse("[1o,0u]")) == -1
    assert top_sign(parse("[1b,0o]")) == -1
    assert top_sign(parse("[1b,1b]")) == 1
    assert diagonal_factor(parse("[1b,1b,1,0o]")) == 2


def test_omega_sign():
    assert omega_sign(parse("[2o]")) == 1
    assert omega_sign(parse("[2]")) == -1
    assert omega_sign(parse("[1b,1]")) == 1


def test_products_of_simple_monomials():
    assert m("[1o]") * m("[0u]") == m("[1b]") + m("[1o,0u]")
    assert m("[1]") * m("[1]") == m("[2]") + m("[1,1]", 2)
    assert (m("[0o]") * m("[0o]")).is_zero()


def test_product_terms_are_cached_tuples():
    terms = monomial_product(parse("[1o]"), parse("[0u]"))
    assert {(str(t.gamma), t.mult * t.sign) for t in terms} == {("[1b]", 1), ("[1o,0u]", 1)}


def test_basis_mismatch():
    with pytest.raises(BasisMismatch):
        m("[1]") + AbstractPoly.single("p", parse("[1]"))


def test_concat_signs():
    assert concat(parse("[1u]"), parse("[2o]")) == (-1, parse("[2o,1u]"))
    assert concat(parse("[2o]"), parse("[1u]")) == (1, parse("[2o,1u]"))
    assert concat(parse("[1o]"), parse("[1o]")) == (0, None)
    assert concat(parse("[1b]"), parse("[2]")) == (1, parse("[2,1b]"))


def test_p_generators_are_monomials():
    for mark in ("o", "u", "b"):
        for n in range(4):
            sp = parse(f"[{n}{mark}]")
            assert generator_in_m("p", mark, n) == AbstractPoly.single("m", sp)


def test_compact_formulas_match_recursions_and_monomials():
    for family in ("h", "e"):
        rec = hep_recursions(family, 3)
        for mark in ("", "o", "u", "b"):
            for n in range(4):
                if mark == "" and n == 0:
                    continue
                compact = compact_in_p(family, mark, n)
                assert compact == rec[mark][n], (family, mark, n)
                assert compact == convert(generator_in_m(family, mark, n), "p")


def test_over_first_sign():
    assert over_first_sign(parse("[2u,1o]")) == -1
    assert over_first_sign(parse("[2o,1u]")) == 1
    assert over_first_sign(parse("[3u,2o,1o]")) == 1


def test_g_basis_alpha_one_is_h():
    for sp in enumerate_sector((2, 1, 1)):
        assert multiplicative_expand("g", sp, F(1)).coeffs == multiplicative_expand("h", sp).coeffs


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_monomial_products_supercommute(a, b):
    sign = -1 if (a.fermion_count * b.fermion_count) & 1 else 1
    assert mul_m(m(str(a)), m(str(b))) == mul_m(m(str(b)), m(str(a))).scale(sign)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["p", "h", "e"]),
       st.sampled_from([(2, 1, 1), (3, 1, 0), (2, 0, 2), (3, 0, 1), (1, 2, 1)]),
       st.data())
def test_multiplicative_expand_matches_oracle(basis, s, data):
    sp = data.draw(st.sampled_from(enumerate_sector(s)))
    n_vars = max(len(x) for x in enumerate_sector(s))
    oracle = extract_m_coeffs(multiplicative_explicit(basis, sp, VarConfig(n_vars)), Sector(*s))
    assert multiplicative_expand(basis, sp) == oracle


def test_h_over_two_in_monomials():
    want = {parse("[2o]"): 3, parse("[2,0o]"): 1, parse("[1o,1]"): 2, parse("[1,1,0o]"): 1}
    assert generator_in_m("h", "o", 2) == AbstractPoly("m", want)
