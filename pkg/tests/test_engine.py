from fractions import Fraction

import pytest

from lie_split.engine import (oracle_symmetric_terms,
                              palindromic_product_series, standard_terms,
                              standard_terms_left, symmetric_rows_inside_sum,
                              symmetric_terms, symmetric_terms_swapped)
from lie_split.freelie import (AssocPoly, FreeLieModule, LieCombo, bracket,
                               expand_assoc, expands_equal)
from lie_split.series import AssocPolyAlgebra, exp_factor

X = LieCombo.generator("X")
Y = LieCombo.generator("Y")
MOD = FreeLieModule()


def assoc_pair():
    return AssocPoly.word(("X",)), AssocPoly.word(("Y",))


def golden_c3():
    xy = bracket(X, Y)
    return (bracket(X, xy).scale(Fraction(1, 48))
            + bracket(Y, xy).scale(Fraction(1, 24)))


def golden_c5():
    xy = bracket(X, Y)
    xxy = bracket(X, xy)
    yxy = bracket(Y, xy)
    return (bracket(X, bracket(X, xxy)).scale(Fraction(1, 3840))
            + bracket(Y, bracket(X, xxy)).scale(Fraction(1, 960))
            + bracket(Y, bracket(Y, xxy)).scale(Fraction(1, 640))
            + bracket(Y, bracket(Y, yxy)).scale(Fraction(1, 960))
            + bracket(xy, xxy).scale(Fraction(-1, 960))
            + bracket(xy, yxy).scale(Fraction(-1, 480)))


def test_symmetric_terms_rejects_bad_degree():
    for bad in (1, 2, 4, 8):
        with pytest.raises(ValueError):
            symmetric_terms(MOD, X, Y, bad)


def test_symmetric_terms_only_odd_keys():
    table = symmetric_terms(MOD, X, Y, 9)
    assert sorted(table) == [3, 5, 7, 9]


def test_degree_three_matches_golden_syntactically():
    table = symmetric_terms(MOD, X, Y, 3)
    assert table[3] == golden_c3()


def test_degree_five_matches_golden_after_expansion():
    table = symmetric_terms(MOD, X, Y, 5)
    assert expands_equal(table[5], golden_c5())


def test_each_term_is_homogeneous():
    from lie_split.freelie import tree_degree
    table = symmetric_terms(MOD, X, Y, 9)
    for k, combo in table.items():
        for tree, _ in combo.sorted_terms():
            assert tree_degree(tree) == k


def test_swapped_variant_is_letter_exchange():
    plain = symmetric_terms(MOD, X, Y, 7)
    swapped = symmetric_terms_swapped(MOD, X, Y, 7)
    relabeled = symmetric_terms(MOD, Y, X, 7)
    for k in plain:
        assert expands_equal(swapped[k], relabeled[k])


def test_inside_sum_rows_agree_after_expansion_only():
    direct = symmetric_terms(MOD, X, Y, 9)
    inside, _, _ = symmetric_rows_inside_sum(MOD, X, Y, 9)
    for k in direct:
        assert expands_equal(direct[k], inside[k])
    # the raw tree collections differ at the top degree, equality is a
    # property of the expanded value, not of the printed form
    assert direct[9] != inside[9]


def test_oracle_matches_generated_terms_through_degree_nine():
    alg = AssocPolyAlgebra()
    ax, ay = assoc_pair()
    oracle = oracle_symmetric_terms(alg, ax, ay, 9)
    table = symmetric_terms(MOD, X, Y, 9)
    for k in (3, 5, 7, 9):
        assert oracle[k] == expand_assoc(table[k])


def test_oracle_even_orders_vanish():
    alg = AssocPolyAlgebra()
    ax, ay = assoc_pair()
    oracle = oracle_symmetric_terms(alg, ax, ay, 8)
    for k in (2, 4, 6, 8):
        assert alg.is_zero(oracle[k])


def test_standard_terms_first_three_goldens():
    alg = AssocPolyAlgebra()
    ax, ay = assoc_pair()
    std = standard_terms(alg, ax, ay, 4)
    xy = bracket(X, Y)
    assert std[2] == expand_assoc(xy.scale(Fraction(-1, 2)))
    assert std[3] == expand_assoc(bracket(Y, xy).scale(Fraction(1, 3))
                                  + bracket(X, xy).scale(Fraction(1, 6)))
    xxy = bracket(X, xy)
    c4 = (bracket(X, xxy).scale(Fraction(-1, 24))
          + bracket(Y, xxy).scale(Fraction(-1, 8))
          + bracket(Y, bracket(Y, xy)).scale(Fraction(-1, 8)))
    assert std[4] == expand_assoc(c4)


def test_left_variant_alternates_signs():
    alg = AssocPolyAlgebra()
    ax, ay = assoc_pair()
    std = standard_terms(alg, ax, ay, 7)
    left = standard_terms_left(alg, ax, ay, 7)
    for i in range(2, 8):
        assert left[i] == std[i].scale(Fraction((-1) ** (i + 1)))


def test_palindromic_product_rebuilds_exponential():
    order = 7
    alg = AssocPolyAlgebra()
    ax, ay = assoc_pair()
    expanded = {k: expand_assoc(v)
                for k, v in symmetric_terms(MOD, X, Y, order).items()}
    prod = palindromic_product_series(alg, ax, ay, expanded, order)
    target = exp_factor(alg, alg.add(ax, ay), 1, order)
    for j in range(order + 1):
        assert prod.coefficient(j) == target.coefficient(j)


def test_terms_work_on_matrix_module_too():
    import numpy as np
    from lie_split.matrices import MatrixModule, NumpyKit, random_matrix
    kit = NumpyKit()
    x = random_matrix(4, 0.4, 11)
    y = random_matrix(4, 0.4, 12)
    table = symmetric_terms(MatrixModule(kit, 4), x, y, 7)
    sym = expand_assoc(symmetric_terms(MOD, X, Y, 7)[7])
    direct = np.zeros((4, 4))
    for word, c in sym.terms.items():
        m = np.eye(4)
        for letter in word:
            m = m @ (x if letter == "X" else y)
        direct = direct + float(c) * m
    assert np.linalg.norm(table[7] - direct) <= 1e-12 * np.linalg.norm(direct)
