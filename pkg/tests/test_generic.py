from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supersym.generic import (NDistinctnessViolation, NPart, from_n2, n_config, n_count_series,
                              n_duality, n_enumerate, n_generator, n_kernel_check,
                              n_monomial_explicit, n_norm, n_parse, n_power_sum,
                              n_power_sum_by_derivative, n_validate, specialization_check,
                              to_n2, z_constituent)
from supersym.grassmann import VarConfig, classical_p, generator_explicit, word_sign
from supersym.spar import ParseError, enumerate_sector, parse
from supersym.transforms import kernel_series


def test_large_example():
    sp = n_parse(6, "[5^{2,1},4,3^{5,4,1},3^{4,1},2^{6,4,1},2^{6,3,2},2,"
                    "1^{4,3,2,1},1^{4,3,2,1},1^{1},0^{5,2,1},0^{6,1}]")
    assert sp.size == 24
    assert sp.fermion_degree == 27


def test_part_order_three_tiers():
    sp = n_validate(3, [(1, (1,)), (1, (3, 1)), (2, ()), (1, (2, 1)), (1, (3,))])
    assert str(sp) == "[2,1^{3,1},1^{2,1},1^{3},1^{1}]"


def test_odd_constituents_distinct():
    with pytest.raises(NDistinctnessViolation):
        n_validate(3, [(1, (2,)), (1, (2,))])
    assert len(n_validate(3, [(1, (2, 1)), (1, (2, 1))])) == 2


def test_serialization():
    p = NPart(5, (1, 5, 2))
    assert str(p) == "5^{5,2,1}"
    assert p.to_json() == {"v": 5, "T": [5, 2, 1]}
    with pytest.raises(ParseError):
        n_parse(3, "[2^{1},x]")


def test_two_type_dictionary():
    for text in ("[2b,1o,0u]", "[3u,1,1,0b]"):
        sp = parse(text)
        assert to_n2(from_n2(sp)) == sp
    assert str(from_n2(parse("[2b,1o,0u]"))) == "[2^{2,1},1^{2},0^{1}]"


def test_one_type_counts_are_distinct_part_counts():
    # N=1: a strict partition with zeros allowed for the fermionic part
    series = n_count_series(1, 6, (3,))
    for (n, m1), c in series.items():
        assert len(n_enumerate(n, (m1,))) == c
    assert series[(3, 1)] == 7


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3), st.tuples(st.integers(0, 2), st.integers(0, 1), st.integers(0, 1)))
def test_three_type_counts(n, deg):
    series = n_count_series(3, 3, (2, 1, 1))
    assert len(n_enumerate(n, deg)) == series.get((n,) + deg, 0)


def test_power_sum_normalization():
    cfg = n_config(3, 3)
    for content in ((), (1,), (3,), (2, 1), (3, 2, 1)):
        for n in range(3):
            if not content and n == 0:
                continue
            part = NPart(n, content)
            assert n_power_sum_by_derivative(part, cfg) == n_power_sum(part, cfg)
    assert n_power_sum(NPart(3), cfg) == classical_p(3, cfg)


def test_two_type_power_sums_coincide():
    cfg = VarConfig(3)
    for mark, content in (("o", (2,)), ("u", (1,)), ("b", (2, 1))):
        for n in range(3):
            assert n_power_sum(NPart(n, content), cfg) == generator_explicit("p", mark, n, cfg)
            assert n_generator("h", NPart(n, content), cfg) == generator_explicit("h", mark, n, cfg)


def test_printed_leading_term():
    sp = n_parse(6, "[5^{6,2,1},3^{1},1^{5,3},1,0^{6,5}]")
    cfg = n_config(5, 6)
    f = n_monomial_explicit(sp, cfg)
    word = [cfg.gen(0, 6 - 6), cfg.gen(0, 6 - 2), cfg.gen(0, 6 - 1), cfg.gen(1, 6 - 1),
            cfg.gen(2, 6 - 5), cfg.gen(2, 6 - 3), cfg.gen(4, 6 - 6), cfg.gen(4, 6 - 5)]
    sign, mask = word_sign(word)
    assert sign == 1
    assert f.terms[((5, 3, 1, 1, 0), mask)] == 1


def test_norm_reductions():
    assert z_constituent([2, 2], 0) == 8
    assert z_constituent([1, 1], 2) == F(1, 2)
    assert z_constituent([3], 1) == 1
    z, sign = n_norm(n_parse(3, "[2^{3,2,1},1^{1},0^{2}]"))
    assert z == F(1, 12) and sign == 1  # M = 5, C(5,2) even


def test_duality_trivial_and_two_type():
    assert n_duality(0, (0, 0, 0)) == [[1]]
    g = n_duality(2, (1, 1))
    assert g == [[int(i == j) for j in range(11)] for i in range(11)]


def test_specialization_small():
    assert specialization_check((2, 1, 1)).ok
    assert [from_n2(sp) for sp in enumerate_sector((3, 1, 2))] == n_enumerate(3, (2, 1))


def test_two_type_kernel_matches_core():
    a = kernel_series(2, 1, (1, 1), n_types=2, max_total=2)
    b = kernel_series(2, 1, (1, 1))
    assert a == b


def test_fermion_free_kernel_is_cauchy():
    assert n_kernel_check(2, 3, 2, 0).ok


def test_z_matches_kernel_coefficients():
    # |Lambda| + M <= 4 for up to three types, via the diagonal kernel expansion
    assert n_kernel_check(2, 3, 2, 2).ok
