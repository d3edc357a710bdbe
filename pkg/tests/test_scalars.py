from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lie_split.scalars import (UniPoly, as_fraction, format_rational,
                               parse_coefficient)

rationals = st.fractions(min_value=-10**6, max_value=10**6,
                         max_denominator=10**4)
polys = st.lists(rationals, max_size=6).map(UniPoly)


def test_as_fraction_accepts_ints_and_strings():
    assert as_fraction(3) == Fraction(3)
    assert as_fraction("2/6") == Fraction(1, 3)
    assert as_fraction(Fraction(5, 7)) == Fraction(5, 7)


def test_format_rational_drops_unit_denominator():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 8)) == "-3/8"
    assert format_rational(Fraction(0)) == "0"


@given(rationals)
def test_format_parse_round_trip(q):
    assert as_fraction(format_rational(q)) == q


def test_parse_coefficient_forms():
    assert parse_coefficient("3/4") == UniPoly.constant(Fraction(3, 4))
    assert parse_coefficient("-1 t") == UniPoly.monomial(Fraction(-1), 1)
    assert parse_coefficient("5/2 t^3") == UniPoly.monomial(Fraction(5, 2), 3)
    assert parse_coefficient(" 7 ") == UniPoly.constant(Fraction(7))


def test_parse_coefficient_rejects_garbage():
    for bad in ("", "t", "1.5", "2 t^", "1/0", "x"):
        with pytest.raises(ValueError):
            parse_coefficient(bad)


def test_unipoly_trims_trailing_zeros():
    p = UniPoly([Fraction(1), Fraction(0), Fraction(0)])
    assert p.degree == 0
    assert p == UniPoly.one()
    assert UniPoly([Fraction(0)]).is_zero()


def test_unipoly_coefficient_out_of_range_is_zero():
    p = UniPoly.monomial(Fraction(2, 3), 2)
    assert p.coefficient(5) == 0
    assert p.coefficient(2) == Fraction(2, 3)


def test_unipoly_horner_evaluation():
    p = UniPoly([Fraction(1), Fraction(-2), Fraction(3)])  # 1 - 2t + 3t^2
    assert p(Fraction(1, 2)) == Fraction(3, 4)
    assert abs(p(0.5) - 0.75) < 1e-15


@given(polys, polys, polys)
def test_unipoly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@given(polys, rationals)
def test_unipoly_scale_matches_constant_mul(p, q):
    assert p.scale(q) == p * UniPoly.constant(q)


@given(polys, polys, st.fractions(min_value=-100, max_value=100,
                                  max_denominator=50))
def test_unipoly_evaluation_is_hom(a, b, s):
    assert (a * b)(s) == a(s) * b(s)
    assert (a + b)(s) == a(s) + b(s)


def test_unipoly_str_shows_powers():
    p = UniPoly.monomial(Fraction(1, 48), 1)
    assert str(p) == "1/48 t"
    q = UniPoly([Fraction(1), Fraction(0), Fraction(-1, 2)])
    s = str(q)
    assert "t^2" in s and "1" in s
