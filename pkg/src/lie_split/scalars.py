"""Exact scalar arithmetic: rationals and univariate polynomials over them.

Rational numbers are stdlib ``fractions.Fraction`` values, which already
guarantee the canonical form we rely on everywhere (lowest terms, positive
denominator, arbitrary precision).  ``str()`` of a Fraction is exactly the
``p/q`` (or ``p`` when the denominator is 1) wire format used in all JSON and
CSV output, and ``Fraction(text)`` parses it back.

``UniPoly`` is a dense polynomial in one formal variable, written ``t`` in
serialized form.  It is the coefficient type used when Lie brackets carry a
free parameter (structure constants like [X,Z] = t*Y).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and p/q strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize as 'p/q', or 'p' when the denominator is one."""
    return str(q)


_COEFF_RE = re.compile(
    r"^\s*(?P<rat>[+-]?\d+(?:/\d+)?)\s*(?:t(?:\^(?P<exp>\d+))?)?\s*$"
)


def parse_coefficient(text: str) -> "UniPoly":
    """Parse 'p/q' or 'p/q t^m' (plain 't' means t^1) into a monomial."""
    m = _COEFF_RE.match(text)
    if m is None:
        raise ValueError(f"bad coefficient literal: {text!r}")
    try:
        rat = Fraction(m.group("rat"))
    except ZeroDivisionError:
        raise ValueError(f"bad coefficient literal: {text!r}") from None
    if "t" not in text:
        exp = 0
    else:
        exp = int(m.group("exp")) if m.group("exp") else 1
    return UniPoly.monomial(rat, exp)


class UniPoly:
    """Dense univariate polynomial with Fraction coefficients.

    Invariant: ``coeffs`` never has a trailing zero, so equal polynomials
    compare equal structurally and ``degree`` is well defined (the zero
    polynomial reports degree -1).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls()

    @classmethod
    def one(cls) -> "UniPoly":
        return cls((1,))

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((as_fraction(c),))

    @classmethod
    def monomial(cls, c, exp: int) -> "UniPoly":
        if exp < 0:
            raise ValueError("monomial exponent must be nonnegative")
        return cls((0,) * exp + (as_fraction(c),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return UniPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "UniPoly":
        c = as_fraction(c)
        if c == 0:
            return UniPoly()
        return UniPoly(a * c for a in self.coeffs)

    def coefficient(self, exp: int) -> Fraction:
        if 0 <= exp < len(self.coeffs):
            return self.coeffs[exp]
        return Fraction(0)

    def __call__(self, value):
        """Evaluate with Horner's rule; value may be Fraction, float, mpf."""
        acc = None
        for c in reversed(self.coeffs):
            if acc is None:
                acc = c + 0 * value
            else:
                acc = acc * value + c
        if acc is None:
            return 0 * value
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for exp, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if exp == 0:
                parts.append(format_rational(c))
            elif exp == 1:
                parts.append(f"{format_rational(c)} t")
            else:
                parts.append(f"{format_rational(c)} t^{exp}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"
