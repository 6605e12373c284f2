from fractions import Fraction
from math import lcm

from hypothesis import given
from hypothesis import strategies as st

from csw.vectors import (
    SparseVector,
    format_rational,
    format_vector,
    pair,
    parse_rational,
    parse_vector,
)

fractions_st = st.fractions(min_value=-50, max_value=50, max_denominator=20)
vectors_st = st.dictionaries(st.integers(min_value=0, max_value=12),
                             fractions_st, max_size=6).map(SparseVector)


def test_zero_entries_dropped():
    v = SparseVector({0: Fraction(1), 1: Fraction(0)})
    assert v.support == (0,)
    assert not (SparseVector.unit(3) - SparseVector.unit(3))


def test_parse_and_format():
    assert parse_rational("1/2") == Fraction(1, 2)
    assert parse_rational("-3") == Fraction(-3)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    v = parse_vector("0:1,2:-1/2")
    assert v[0] == 1 and v[2] == Fraction(-1, 2)
    assert format_vector(v) == "0:1,2:-1/2"
    assert parse_vector("") == SparseVector()


def test_restrictions():
    v = parse_vector("0:1,3:2,5:-1")
    assert v.restrict_below(4) == parse_vector("0:1,3:2")
    assert v.restrict_to({5, 0}) == parse_vector("0:1,5:-1")
    assert v.restrict_below(0).is_zero()


def test_transport_requires_injectivity():
    v = parse_vector("0:1,1:1")
    moved = v.map_positions({0: 5, 1: 7})
    assert moved == parse_vector("5:1,7:1")


def test_pair_examples():
    assert pair(SparseVector.unit(0), SparseVector.unit(0)) == 1
    f = parse_vector("0:1/2,2:-1/2")
    x = parse_vector("0:1,2:1")
    assert pair(f, x) == 0
    # alternating functional of the width-6 family against a unit vector
    h0 = parse_vector("0:1,2:1/2,3:-1/2,4:1/2,5:-1/2")
    assert pair(h0, SparseVector.unit(2)) == Fraction(1, 2)


@given(vectors_st, vectors_st, fractions_st)
def test_pairing_is_bilinear(f, x, c):
    assert pair(f, x + x.scale(c)) == pair(f, x) * (1 + c)
    assert pair(f.scale(c), x) == c * pair(f, x)


@given(vectors_st, vectors_st)
def test_pairing_symmetric(f, x):
    assert pair(f, x) == pair(x, f)


@given(vectors_st, vectors_st)
def test_pairing_rationality(f, x):
    denominators = [v.denominator for _, v in f.items()] + \
                   [v.denominator for _, v in x.items()]
    q = lcm(*denominators) if denominators else 1
    value = pair(f, x) * q * q
    assert value.denominator == 1


@given(vectors_st)
def test_json_round_trip(v):
    assert SparseVector.from_json(v.to_json()) == v
