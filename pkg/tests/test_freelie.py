from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lie_split.freelie import (AssocPoly, FreeLieModule, LieCombo, ad_pow,
                               bracket, canonicalize, collected_term_count,
                               combo_from_json, combo_to_json, expand_assoc,
                               expands_equal, tree_degree, tree_str)

X = LieCombo.generator("X")
Y = LieCombo.generator("Y")

coeffs = st.fractions(min_value=-20, max_value=20,
                      max_denominator=12).filter(bool)


def combos_of_degree(d):
    """Random combinations, homogeneous of degree d (additions require it)."""
    if d == 1:
        trees = st.sampled_from([X, Y])
    else:
        trees = st.integers(1, d - 1).flatmap(
            lambda i: st.tuples(combos_of_degree(i), combos_of_degree(d - i)).map(
                lambda ab: bracket(ab[0], ab[1])))
    term = st.tuples(coeffs, trees).map(lambda ct: ct[1].scale(ct[0]))
    return st.lists(term, min_size=1, max_size=3).map(
        lambda parts: sum(parts[1:], parts[0]))


def small_combos(max_degree=3):
    return st.integers(1, max_degree).flatmap(combos_of_degree)


def test_generators_and_tree_helpers():
    assert tree_degree("X") == 1
    t = ("X", ("X", "Y"))
    assert tree_degree(t) == 3
    assert tree_str(t) == "[X,[X,Y]]"


def test_bracket_of_generator_with_itself_vanishes():
    assert bracket(X, X).is_zero()
    assert bracket(X + Y, X + Y).is_zero() or expands_equal(
        bracket(X + Y, X + Y), LieCombo.zero())


def test_expand_known_word_identity():
    # [X,[X,Y]] = XXY - 2 XYX + YXX in the word algebra
    p = expand_assoc(bracket(X, bracket(X, Y)))
    assert p.terms[("X", "X", "Y")] == 1
    assert p.terms[("X", "Y", "X")] == -2
    assert p.terms[("Y", "X", "X")] == 1
    assert len(p.terms) == 3


@settings(max_examples=60)
@given(small_combos(), small_combos())
def test_antisymmetry_under_expansion(a, b):
    assert expands_equal(bracket(a, b) + bracket(b, a), LieCombo.zero())


@settings(max_examples=40, deadline=None)
@given(small_combos(2), small_combos(2), small_combos(2))
def test_jacobi_under_expansion(a, b, c):
    cyclic = (bracket(a, bracket(b, c)) + bracket(b, bracket(c, a))
              + bracket(c, bracket(a, b)))
    assert expands_equal(cyclic, LieCombo.zero())


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(
    lambda d: st.tuples(combos_of_degree(d), combos_of_degree(d))),
    coeffs, coeffs)
def test_expand_is_linear(pair, p, q):
    a, b = pair
    lhs = expand_assoc(a.scale(p) + b.scale(q))
    rhs = expand_assoc(a).scale(p) + expand_assoc(b).scale(q)
    assert lhs == rhs


def test_ad_pow_matches_iterated_bracket():
    assert ad_pow(X, 0, Y) == Y
    assert ad_pow(X, 1, Y) == bracket(X, Y)
    assert ad_pow(X, 3, Y) == bracket(X, bracket(X, bracket(X, Y)))


@settings(max_examples=40)
@given(small_combos())
def test_canonicalize_preserves_value(a):
    assert expands_equal(a, canonicalize(a))


def test_canonicalize_merges_mirror_trees():
    raw = bracket(X, Y) + bracket(Y, X).scale(Fraction(2))
    canon = canonicalize(raw)
    assert collected_term_count(canon) == 1
    assert expands_equal(canon, bracket(Y, X))


def test_collected_term_count_on_zero():
    assert collected_term_count(LieCombo.zero()) == 0


@settings(max_examples=40)
@given(small_combos())
def test_json_round_trip(a):
    assert combo_from_json(combo_to_json(a)) == a


def test_json_format_shape():
    items = combo_to_json(bracket(X, Y).scale(Fraction(1, 2)))
    assert items == [{"coeff": "1/2", "tree": ["X", "Y"]}]


def test_module_contract():
    mod = FreeLieModule()
    assert mod.is_zero(mod.zero()) if hasattr(mod, "is_zero") else mod.zero().is_zero()
    assert mod.add(X, mod.zero()) == X
    assert mod.sub(X, X).is_zero()
    assert mod.scale(Fraction(3), X) == X.scale(Fraction(3))
    assert mod.bracket(X, Y) == bracket(X, Y)


def test_assoc_poly_truncation_cap():
    x = AssocPoly.word(("X",), max_degree=3)
    y = AssocPoly.word(("Y",), max_degree=3)
    prod = x * x * y * y  # degree 4 with cap 3 collapses to zero
    assert prod.is_zero()
    cube = x * x * y
    assert ("X", "X", "Y") in cube.terms


def test_assoc_poly_mixed_degree_sum_keeps_terms():
    x = AssocPoly.word(("X",))
    xy = AssocPoly.word(("X", "Y"), coeff=Fraction(1, 3))
    s = x + xy
    assert s.terms[("X",)] == 1
    assert s.terms[("X", "Y")] == Fraction(1, 3)
