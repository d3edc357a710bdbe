"""Truncated power series in a formal parameter over an associative algebra.

A series holds coefficients c_0..c_order of lambda^0..lambda^order; products
are Cauchy products with everything beyond the order dropped.  The algebra is
supplied as a small context object (zero/unit/add/scale/mul), so the same
series code runs over exact noncommutative polynomials, float matrices and
extended-precision matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import List, Sequence

from .freelie import AssocPoly


class AssocPolyAlgebra:
    """Exact coefficient algebra: noncommutative polynomials."""

    def __init__(self, max_degree=None):
        self.max_degree = max_degree

    def zero(self):
        return AssocPoly.zero(self.max_degree)

    def unit(self):
        return AssocPoly.unit(self.max_degree)

    def add(self, a, b):
        return a + b

    def scale(self, c, a):
        return a.scale(c)

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()


class TruncSeries:
    """Coefficient list c[0..order]; immutable by convention."""

    __slots__ = ("algebra", "order", "coeffs")

    def __init__(self, algebra, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = list(coeffs)
        if len(cs) > order + 1:
            raise ValueError("more coefficients than the order allows")
        while len(cs) < order + 1:
            cs.append(algebra.zero())
        self.algebra = algebra
        self.order = order
        self.coeffs = cs

    @classmethod
    def unit(cls, algebra, order: int) -> "TruncSeries":
        return cls(algebra, [algebra.unit()], order)

    @classmethod
    def zero(cls, algebra, order: int) -> "TruncSeries":
        return cls(algebra, [], order)

    def coefficient(self, power: int):
        if not (0 <= power <= self.order):
            raise ValueError(f"power {power} outside series order {self.order}")
        return self.coeffs[power]

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        alg = self.algebra
        return TruncSeries(
            alg,
            [alg.add(a, b) for a, b in zip(self.coeffs, other.coeffs)],
            self.order,
        )

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        alg = self.algebra
        return TruncSeries(
            alg,
            [alg.add(a, alg.scale(-1, b)) for a, b in zip(self.coeffs, other.coeffs)],
            self.order,
        )

    def scale(self, c) -> "TruncSeries":
        alg = self.algebra
        return TruncSeries(alg, [alg.scale(c, a) for a in self.coeffs], self.order)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        """Cauchy product truncated at the common order."""
        self._check(other)
        alg = self.algebra
        n = self.order
        out = [alg.zero() for _ in range(n + 1)]
        for i, a in enumerate(self.coeffs):
            if _skippable(alg, a):
                continue
            for j in range(0, n + 1 - i):
                b = other.coeffs[j]
                if _skippable(alg, b):
                    continue
                out[i + j] = alg.add(out[i + j], alg.mul(a, b))
        return TruncSeries(alg, out, n)

    def _check(self, other):
        if self.order != other.order:
            raise ValueError("series orders differ")
        if self.algebra is not other.algebra:
            raise ValueError("series algebras differ")


def _skippable(alg, a) -> bool:
    probe = getattr(alg, "is_zero", None)
    return probe(a) if probe is not None else False


def exp_factor(algebra, elem, power: int, order: int) -> TruncSeries:
    """Series of exp(lambda^power * elem): sum_j lambda^(power*j) elem^j / j!.

    power >= 1; the sum stops once power*j exceeds the order.
    """
    if power < 1:
        raise ValueError("power must be at least 1")
    coeffs = [algebra.zero() for _ in range(order + 1)]
    coeffs[0] = algebra.unit()
    term = algebra.unit()
    j = 1
    while power * j <= order:
        term = algebra.mul(term, elem)
        coeffs[power * j] = algebra.scale(Fraction(1, factorial(j)), term)
        j += 1
    return TruncSeries(algebra, coeffs, order)


def exp_sum(algebra, elems_with_powers, order: int) -> TruncSeries:
    """Product of exp factors, left to right."""
    series = TruncSeries.unit(algebra, order)
    for elem, power in elems_with_powers:
        series = series * exp_factor(algebra, elem, power, order)
    return series
