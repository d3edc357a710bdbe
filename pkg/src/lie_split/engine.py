"""Disentanglement terms for palindromic and one-sided exponential splittings.

Everything here is generic over two small interfaces:

* an *ad-module*: zero / add / sub / scale / bracket.  The term recursion
  is phrased purely in brackets, so one implementation serves free symbolic
  combinations, concrete matrices and structure-constant algebras.
* an associative algebra (zero / unit / add / scale / mul), used by the
  series-peeling constructions that serve as independent cross-checks.

The palindromic splitting writes exp(h(X+Y)) as

    exp(hX/2) exp(hY/2) exp(h^3 C_3) exp(h^5 C_5) ... exp(h^5 C_5)
        exp(h^3 C_3) exp(hY/2) exp(hX/2)

with every even-degree exponent vanishing identically.  The recursion below
maintains two rows of homogeneous elements per odd level k: the "left" row
(log-derivative of the left-peeled remainder, sign-alternating updates) and
the "right" row (log-derivative of the right closing product).  The exponent
of the next level is a scaled difference of the two rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional

from .series import TruncSeries, exp_factor


# ---------------------------------------------------------------------------
# Seeds

def _is_zero(mod, v) -> bool:
    probe = getattr(mod, "is_zero", None)
    return probe(v) if probe is not None else False


def _seed_rows(mod, x, y, top: int):
    """Rows at level 1 for l = 0..top.

    left[0] = right[0] = (x + y)/2
    left[l] = ((-1)^l / 2^l) * ( ad_y^l x / (2 l!)
              + sum_{j=0..l} ad_y^(l-j) ad_x^j y / (j! (l-j)!) )
    right[l] = ad_y^l x / (l! 2^(l+1))
    """
    ady_x = [x]
    for _ in range(top):
        ady_x.append(mod.bracket(y, ady_x[-1]))
    adx_y = [y]
    for _ in range(top):
        adx_y.append(mod.bracket(x, adx_y[-1]))
    # triangle[j][m] = ad_y^m ad_x^j y for j + m <= top
    triangle: List[List] = []
    for j in range(top + 1):
        col = [adx_y[j]]
        for _ in range(top - j):
            col.append(mod.bracket(y, col[-1]))
        triangle.append(col)

    half_sum = mod.scale(Fraction(1, 2), mod.add(x, y))
    left = [half_sum]
    right = [half_sum]
    for l in range(1, top + 1):
        right.append(mod.scale(Fraction(1, factorial(l) * 2 ** (l + 1)), ady_x[l]))
        acc = mod.scale(Fraction(1, 2 * factorial(l)), ady_x[l])
        for j in range(l + 1):
            c = Fraction(1, factorial(j) * factorial(l - j))
            acc = mod.add(acc, mod.scale(c, triangle[j][l - j]))
        left.append(mod.scale(Fraction((-1) ** l, 2 ** l), acc))
    return left, right


def seed_left(l: int, x, y, mod) -> object:
    """Level-1 left-row seed at index l (see _seed_rows)."""
    if l < 0:
        raise ValueError("seed index must be nonnegative")
    return _seed_rows(mod, x, y, l)[0][l]


def seed_right(l: int, x, y, mod) -> object:
    """Level-1 right-row seed at index l."""
    if l < 0:
        raise ValueError("seed index must be nonnegative")
    return _seed_rows(mod, x, y, l)[1][l]


# ---------------------------------------------------------------------------
# Palindromic term recursion

def _advance_row(mod, row, ck, k: int, sign: int):
    """One level step: sums over the plain previous row, then the l = k-1
    entry is corrected by sign * k * C_k.  Corrections are never fed through
    ad_{C_k} at the same level, which keeps term lists free of bracket pairs
    that only cancel after expansion.
    """
    top = len(row) - 1
    new = list(row)  # j = 0 contribution
    ck_zero = _is_zero(mod, ck)
    if not ck_zero:
        for m in range(top + 1):
            base = row[m]
            if _is_zero(mod, base):
                continue
            acc = base
            j = 1
            while m + k * j <= top:
                acc = mod.bracket(ck, acc)
                c = Fraction(sign ** j, factorial(j))
                new[m + k * j] = mod.add(new[m + k * j], mod.scale(c, acc))
                j += 1
    if k - 1 <= top:
        new[k - 1] = mod.add(new[k - 1], mod.scale(Fraction(sign * k), ck))
    return new


def symmetric_terms(mod, x, y, max_degree: int) -> Dict[int, object]:
    """Palindromic splitting exponents C_3, C_5, ..., C_max_degree.

    max_degree must be odd and at least 3.  Even-degree exponents vanish
    identically and are never materialized.
    """
    if max_degree < 3 or max_degree % 2 == 0:
        raise ValueError("max_degree must be an odd integer >= 3")
    top = max_degree - 1
    row_l, row_r = _seed_rows(mod, x, y, top)
    terms: Dict[int, object] = {
        3: mod.scale(Fraction(1, 6), mod.sub(row_l[2], row_r[2]))
    }
    k = 3
    while k + 2 <= max_degree:
        ck = terms[k]
        row_l = _advance_row(mod, row_l, ck, k, sign=-1)
        row_r = _advance_row(mod, row_r, ck, k, sign=+1)
        terms[k + 2] = mod.scale(
            Fraction(1, 2 * (k + 2)), mod.sub(row_l[k + 1], row_r[k + 1])
        )
        k += 2
    return terms


def symmetric_terms_swapped(mod, x, y, max_degree: int) -> Dict[int, object]:
    """Exponents for the mirrored splitting that opens with exp(hY/2)."""
    return symmetric_terms(mod, y, x, max_degree)


def symmetric_rows_inside_sum(mod, x, y, max_degree: int):
    """Variant used only for consistency testing: applies the l = k-1
    correction inside the j-sum (so ad powers do hit the correction term).
    Mathematically identical to the production form because
    ad_{C_k}(C_k) = 0; syntactically it may carry extra canceling trees.
    Returns (terms, final left row, final right row).
    """
    if max_degree < 3 or max_degree % 2 == 0:
        raise ValueError("max_degree must be an odd integer >= 3")
    top = max_degree - 1
    row_l, row_r = _seed_rows(mod, x, y, top)
    terms = {3: mod.scale(Fraction(1, 6), mod.sub(row_l[2], row_r[2]))}
    k = 3
    while k + 2 <= max_degree:
        ck = terms[k]

        def step(row, sign):
            corrected = list(row)
            if k - 1 <= top:
                corrected[k - 1] = mod.add(
                    corrected[k - 1], mod.scale(Fraction(sign * k), ck)
                )
            new = [mod.zero() for _ in range(top + 1)]
            for m in range(top + 1):
                acc = corrected[m]
                j = 0
                while m + k * j <= top:
                    if j > 0:
                        acc = mod.bracket(ck, acc)
                    c = Fraction(sign ** j, factorial(j))
                    new[m + k * j] = mod.add(new[m + k * j], mod.scale(c, acc))
                    j += 1
            return new

        row_l = step(row_l, -1)
        row_r = step(row_r, +1)
        terms[k + 2] = mod.scale(
            Fraction(1, 2 * (k + 2)), mod.sub(row_l[k + 1], row_r[k + 1])
        )
        k += 2
    return terms, row_l, row_r


# ---------------------------------------------------------------------------
# Series-peeling constructions (independent of the recursion above)

def oracle_symmetric_terms(algebra, x, y, order: int) -> Dict[int, object]:
    """Exponents C_2..C_order recovered one degree at a time by conjugating
    the palindromic product away from exp(lambda (x+y)).

    Start from M = E(-y/2) E(-x/2) exp(lambda(x+y)) E(-x/2) E(-y/2) where
    E(v) = exp(lambda v).  With C_2..C_n peeled off, M equals
    exp(lambda^{n+1} C_{n+1}) (higher factors) exp(lambda^{n+1} C_{n+1}),
    so the lambda^{n+1} coefficient is exactly 2 C_{n+1}.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    alg = algebra
    half = Fraction(1, 2)
    xh = alg.scale(-half, x)
    yh = alg.scale(-half, y)
    center = exp_factor(alg, alg.add(x, y), 1, order)
    m = (
        exp_factor(alg, yh, 1, order)
        * exp_factor(alg, xh, 1, order)
        * center
        * exp_factor(alg, xh, 1, order)
        * exp_factor(alg, yh, 1, order)
    )
    terms: Dict[int, object] = {}
    for n in range(2, order + 1):
        cn = alg.scale(half, m.coefficient(n))
        terms[n] = cn
        peel = exp_factor(alg, alg.scale(-1, cn), n, order)
        m = peel * m * peel
    return terms


def standard_terms(algebra, x, y, order: int) -> Dict[int, object]:
    """One-sided splitting exp(lambda(x+y)) = exp(lambda x) exp(lambda y)
    exp(lambda^2 D_2) exp(lambda^3 D_3) ...: peel factors from the left."""
    if order < 2:
        raise ValueError("order must be at least 2")
    alg = algebra
    s = (
        exp_factor(alg, alg.scale(-1, y), 1, order)
        * exp_factor(alg, alg.scale(-1, x), 1, order)
        * exp_factor(alg, alg.add(x, y), 1, order)
    )
    terms: Dict[int, object] = {}
    for n in range(2, order + 1):
        dn = s.coefficient(n)
        terms[n] = dn
        s = exp_factor(alg, alg.scale(-1, dn), n, order) * s
    return terms


def standard_terms_left(algebra, x, y, order: int) -> Dict[int, object]:
    """Mirrored one-sided splitting exp(lambda(x+y)) =
    ... exp(lambda^3 D'_3) exp(lambda^2 D'_2) exp(lambda y) exp(lambda x):
    peel factors from the right."""
    if order < 2:
        raise ValueError("order must be at least 2")
    alg = algebra
    s = (
        exp_factor(alg, alg.add(x, y), 1, order)
        * exp_factor(alg, alg.scale(-1, x), 1, order)
        * exp_factor(alg, alg.scale(-1, y), 1, order)
    )
    terms: Dict[int, object] = {}
    for n in range(2, order + 1):
        dn = s.coefficient(n)
        terms[n] = dn
        s = s * exp_factor(alg, alg.scale(-1, dn), n, order)
    return terms


def palindromic_product_series(algebra, x, y, terms: Dict[int, object],
                               order: int) -> TruncSeries:
    """The full palindromic product as a series: exp(lambda x/2) exp(lambda y/2)
    [ascending term factors] [descending term factors] exp(lambda y/2)
    exp(lambda x/2), truncated at the given order."""
    alg = algebra
    half = Fraction(1, 2)
    asc = [k for k in sorted(terms) if k <= order]
    series = exp_factor(alg, alg.scale(half, x), 1, order)
    series = series * exp_factor(alg, alg.scale(half, y), 1, order)
    for k in asc:
        series = series * exp_factor(alg, terms[k], k, order)
    for k in reversed(asc):
        series = series * exp_factor(alg, terms[k], k, order)
    series = series * exp_factor(alg, alg.scale(half, y), 1, order)
    series = series * exp_factor(alg, alg.scale(half, x), 1, order)
    return series
