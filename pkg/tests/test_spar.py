import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supersym.spar import (ANNIHILATED, DistinctnessViolation, OrderViolation, ParseError,
                           Part, Sector, SuperPartition, WeightCmp, add_superpartitions,
                           count_sector_series, enumerate_sector, from_json, insert_part,
                           parse, validate, weight_compare)


def test_parse_sorts_and_formats():
    sp = parse("[0o,3u,4b,2,4o,3,2b,2o,2u,1,0b,0b]")
    assert str(sp) == "[4b,4o,3u,3,2b,2o,2u,2,1,0b,0b,0o]"


def test_long_valid_example():
    sp = parse("[4b,4o,3u,3,2b,2o,2u,1,0b,0b,0o]")
    assert len(sp) == 11
    assert sp.sector == Sector(21, 7, 6)


def test_plain_zeros_trimmed_marked_zeros_kept():
    assert str(parse("[2,0,0o]")) == "[2,0o]"
    assert parse("[]") == SuperPartition(())


@pytest.mark.parametrize("bad", ["[2o,2o]", "[1u,1u,0]", "[0o,0o]"])
def test_odd_parts_distinct(bad):
    with pytest.raises(DistinctnessViolation):
        parse(bad)


def test_bilined_parts_repeat():
    assert str(parse("[1b,1b,0b,0b]")) == "[1b,1b,0b,0b]"


@pytest.mark.parametrize("token", ["2x", "o", "-1", "2ou"])
def test_parse_error_names_token(token):
    with pytest.raises(ParseError) as info:
        parse(f"[1,{token}]")
    assert info.value.token == token


def test_sector_parse():
    assert Sector.parse("2,1,1") == Sector(2, 1, 1)
    assert str(Sector(2, 1, 1)) == "(2|1,1)"
    with pytest.raises(ParseError):
        Sector.parse("2,a,1")


def test_census_211_order():
    got = [str(sp) for sp in enumerate_sector((2, 1, 1))]
    assert got == ["[2b]", "[2o,0u]", "[2u,0o]", "[2,0b]", "[1b,1]", "[2,0o,0u]",
                   "[1o,1u]", "[1o,1,0u]", "[1u,1,0o]", "[1,1,0b]", "[1,1,0o,0u]"]


def test_small_sector_counts():
    series = count_sector_series(3, 2, 2)
    assert series[Sector(0, 0, 0)] == 1
    assert series[Sector(2, 1, 1)] == 11
    assert series[Sector(1, 1, 0)] == 2


def test_addition_example():
    a = parse("[3o,2b,2u,1,1,0o]")
    b = parse("[1u,1,1,0o]")
    assert str(add_superpartitions(a, b)) == "[4b,3b,3u,1o,1,0o]"


def test_addition_can_annihilate():
    assert add_superpartitions(parse("[1o]"), parse("[1]")) is not ANNIHILATED
    assert add_superpartitions(parse("[1o]"), parse("[1o]")) is ANNIHILATED


def test_insert_part():
    assert str(insert_part(parse("[4o,2]"), Part(2, "b"))) == "[4o,2b,2]"
    with pytest.raises(OrderViolation):
        insert_part(parse("[3o,1]"), Part(3, "o"))


def test_weight_compare():
    assert weight_compare(parse("[2b]"), parse("[1,1,0o,0u]")) is WeightCmp.GREATER
    assert weight_compare(parse("[1,1,0o,0u]"), parse("[2b]")) is WeightCmp.LESS
    assert weight_compare(parse("[2o]"), parse("[2u]")) is WeightCmp.INCOMPARABLE
    assert weight_compare(parse("[2o,0u]"), parse("[2u,0o]")) is WeightCmp.EQUAL_PREFIX_SUMS


def test_json_roundtrip():
    sp = parse("[2b,1o,0u]")
    assert from_json(sp.to_json()) == sp


sectors = st.tuples(st.integers(0, 4), st.integers(0, 2), st.integers(0, 2))


@settings(max_examples=40, deadline=None)
@given(sectors)
def test_enumeration_is_consistent(s):
    sps = enumerate_sector(s)
    assert len(set(sps)) == len(sps)
    for sp in sps:
        assert sp.sector == Sector(*s)
        assert parse(str(sp)) == sp
        assert validate(reversed(sp.parts)) == sp


@settings(max_examples=40, deadline=None)
@given(sectors, st.data())
def test_weight_compare_antisymmetric(s, data):
    sps = enumerate_sector(s)
    if not sps:
        return
    a = data.draw(st.sampled_from(sps))
    b = data.draw(st.sampled_from(sps))
    flip = {WeightCmp.GREATER: WeightCmp.LESS, WeightCmp.LESS: WeightCmp.GREATER}
    ab, ba = weight_compare(a, b), weight_compare(b, a)
    assert flip.get(ab, ab) == ba
