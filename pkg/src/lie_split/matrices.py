"""Concrete matrix backends at two precision levels, and the numeric
evaluation of the splitting products.

A *kit* bundles the matrix operations the rest of the code needs (arithmetic,
exponential, norms) for one precision level: NumpyKit wraps float64/scipy,
MPKit wraps mpmath at a configurable number of significant digits (>= 30 for
the extended mode).  MatrixModule adapts a kit to the ad-module interface of
the term recursion; MatrixSeriesAlgebra adapts it to the associative-algebra
interface of the series peelers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional

import numpy as np
import scipy.linalg

import mpmath as mp

from .engine import symmetric_terms, standard_terms


class NumpyKit:
    """float64 matrices; scipy's scaling-and-squaring exponential."""

    name = "double"

    def zeros(self, n):
        return np.zeros((n, n))

    def eye(self, n):
        return np.eye(n)

    def matrix(self, rows):
        return np.array(rows, dtype=float)

    def dim(self, a):
        return a.shape[0]

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def scale(self, c, a):
        return float(c) * a

    def matmul(self, a, b):
        with np.errstate(all="ignore"):
            return a @ b

    def bracket(self, a, b):
        return a @ b - b @ a

    def expm(self, a):
        with np.errstate(all="ignore"):
            return scipy.linalg.expm(a)

    def norm2(self, a):
        if not np.all(np.isfinite(a)):
            return float("inf")
        return float(np.linalg.norm(a, 2))

    def frobenius(self, a):
        if not np.all(np.isfinite(a)):
            return float("inf")
        return float(np.linalg.norm(a, "fro"))

    def power(self, base, exponent: int):
        return float(base) ** exponent

    def is_zero(self, a):
        return not a.any()

    def to_float(self, x):
        return float(x)


class MPKit:
    """mpmath matrices at a fixed working precision (significant digits)."""

    name = "extended"

    def __init__(self, dps: int = 50):
        if dps < 30:
            raise ValueError("extended precision needs at least 30 digits")
        self.dps = dps

    def zeros(self, n):
        with mp.workdps(self.dps):
            return mp.zeros(n, n)

    def eye(self, n):
        with mp.workdps(self.dps):
            return mp.eye(n)

    def matrix(self, rows):
        with mp.workdps(self.dps):
            return mp.matrix([[mp.mpf(v) for v in row] for row in rows])

    def dim(self, a):
        return a.rows

    def add(self, a, b):
        with mp.workdps(self.dps):
            return a + b

    def sub(self, a, b):
        with mp.workdps(self.dps):
            return a - b

    def scale(self, c, a):
        with mp.workdps(self.dps):
            if isinstance(c, Fraction):
                c = mp.mpf(c.numerator) / mp.mpf(c.denominator)
            else:
                c = mp.mpf(c)
            return c * a

    def matmul(self, a, b):
        with mp.workdps(self.dps):
            return a * b

    def bracket(self, a, b):
        with mp.workdps(self.dps):
            return a * b - b * a

    def expm(self, a):
        with mp.workdps(self.dps):
            return mp.expm(a)

    def norm2(self, a):
        with mp.workdps(self.dps):
            return mp.svd_r(a.copy(), compute_uv=False)[0]

    def frobenius(self, a):
        with mp.workdps(self.dps):
            return mp.mnorm(a, "F")

    def power(self, base, exponent: int):
        with mp.workdps(self.dps):
            return mp.mpf(base) ** exponent

    def is_zero(self, a):
        return all(v == 0 for v in a)

    def to_float(self, x):
        return float(x)

    def from_numpy(self, a):
        return self.matrix([[repr(float(v)) for v in row] for row in a])


def kit_for(precision: str):
    """Kit for a precision mode name: 'double' or 'extended'."""
    if precision == "double":
        return NumpyKit()
    if precision == "extended":
        return MPKit()
    raise ValueError(f"unknown precision mode {precision!r}")


class MatrixModule:
    """Ad-module over a kit's matrices."""

    def __init__(self, kit, n: int):
        self.kit = kit
        self.n = n

    def zero(self):
        return self.kit.zeros(self.n)

    def add(self, a, b):
        return self.kit.add(a, b)

    def sub(self, a, b):
        return self.kit.sub(a, b)

    def scale(self, c, a):
        return self.kit.scale(c, a)

    def bracket(self, a, b):
        return self.kit.bracket(a, b)

    def is_zero(self, a):
        return self.kit.is_zero(a)


class MatrixSeriesAlgebra:
    """Associative-algebra view of a kit's matrices, for series peeling."""

    def __init__(self, kit, n: int):
        self.kit = kit
        self.n = n

    def zero(self):
        return self.kit.zeros(self.n)

    def unit(self):
        return self.kit.eye(self.n)

    def add(self, a, b):
        return self.kit.add(a, b)

    def scale(self, c, a):
        return self.kit.scale(c, a)

    def mul(self, a, b):
        return self.kit.matmul(a, b)

    def is_zero(self, a):
        return self.kit.is_zero(a)


def random_matrix(dim: int, target_norm: float, seed: int) -> np.ndarray:
    """Entries i.i.d. uniform on (-1, 1) from numpy's seeded PCG64 generator,
    rescaled so the spectral norm hits target_norm."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    if target_norm <= 0:
        raise ValueError("target norm must be positive")
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, size=(dim, dim))
    return a * (target_norm / np.linalg.norm(a, 2))


def frechet_pair(kit, alpha):
    """The classical 2x2 pair whose full exponentials factor exactly,
    exp(X+Y) = exp(X) exp(Y), despite [X, Y] != 0:

        X = pi [[0, alpha], [-1/alpha, 0]]
        Y = pi [[0, (10+4*sqrt(6)) alpha], [(-10+4*sqrt(6))/alpha, 0]]

    The identity holds only at scale 1, not for exp(lambda(X+Y)) in general.
    """
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if isinstance(kit, MPKit):
        with mp.workdps(kit.dps):
            a = mp.mpf(alpha) if not isinstance(alpha, Fraction) \
                else mp.mpf(alpha.numerator) / mp.mpf(alpha.denominator)
            r6 = 4 * mp.sqrt(6)
            x = mp.pi * mp.matrix([[0, a], [-1 / a, 0]])
            y = mp.pi * mp.matrix([[0, (10 + r6) * a], [(-10 + r6) / a, 0]])
            return x, y
    a = float(alpha)
    r6 = 4.0 * np.sqrt(6.0)
    x = np.pi * np.array([[0.0, a], [-1.0 / a, 0.0]])
    y = np.pi * np.array([[0.0, (10.0 + r6) * a], [(-10.0 + r6) / a, 0.0]])
    return x, y


# ---------------------------------------------------------------------------
# Splitting products

def _scaled_terms(kit, terms: Dict[int, object], lam) -> Dict[int, object]:
    return {k: kit.scale(kit.power(lam, k), v) for k, v in terms.items()}


def psi_symmetric(kit, x, y, lam, n: int,
                  terms: Optional[Dict[int, object]] = None):
    """Palindromic approximant of exp(lambda(x+y)) through degree n.

    Only odd degrees contribute; for even n the product equals the one for
    n-1.  The innermost factor of the palindrome appears once with a doubled
    exponent.  When precomputed degree terms (at scale 1) are passed in they
    are rescaled by lambda^k, which homogeneity makes identical to computing
    them from (lambda x, lambda y) directly, the default.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    m = n if n % 2 == 1 else n - 1
    dim = kit.dim(x)
    if dim != kit.dim(y):
        raise ValueError("dimension mismatch")
    if terms is not None:
        scaled = _scaled_terms(kit, terms, lam)
    elif m >= 3:
        mod = MatrixModule(kit, dim)
        scaled = symmetric_terms(mod, kit.scale(lam, x), kit.scale(lam, y), m)
    else:
        scaled = {}
    xh = kit.expm(kit.scale(Fraction(1, 2), kit.scale(lam, x)))
    yh = kit.expm(kit.scale(Fraction(1, 2), kit.scale(lam, y)))
    asc = [k for k in sorted(scaled) if k < m]
    prod = kit.matmul(xh, yh)
    for k in asc:
        prod = kit.matmul(prod, kit.expm(scaled[k]))
    if m >= 3:
        prod = kit.matmul(prod, kit.expm(kit.scale(2, scaled[m])))
    for k in reversed(asc):
        prod = kit.matmul(prod, kit.expm(scaled[k]))
    prod = kit.matmul(prod, yh)
    prod = kit.matmul(prod, xh)
    return prod


def psi_standard(kit, x, y, lam, n: int,
                 terms: Optional[Dict[int, object]] = None):
    """One-sided approximant exp(lambda x) exp(lambda y) exp(lambda^2 D_2)
    ... exp(lambda^n D_n)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    dim = kit.dim(x)
    if dim != kit.dim(y):
        raise ValueError("dimension mismatch")
    if terms is not None:
        scaled = _scaled_terms(kit, terms, lam)
    else:
        alg = MatrixSeriesAlgebra(kit, dim)
        scaled = standard_terms(alg, kit.scale(lam, x), kit.scale(lam, y), n)
    prod = kit.matmul(kit.expm(kit.scale(lam, x)), kit.expm(kit.scale(lam, y)))
    for k in range(2, n + 1):
        prod = kit.matmul(prod, kit.expm(scaled[k]))
    return prod


def splitting_error(kit, x, y, lam, approx, norm: str = "spectral"):
    """Distance from the exact exponential, in the requested norm."""
    target = kit.expm(kit.scale(lam, kit.add(x, y)))
    diff = kit.sub(target, approx)
    if norm == "spectral":
        return kit.norm2(diff)
    if norm == "frobenius":
        return kit.frobenius(diff)
    raise ValueError(f"unknown norm {norm!r}")


# ---------------------------------------------------------------------------
# CSV persistence (plain rows of entries, comma separated)

def save_matrix_csv(path, a) -> None:
    if isinstance(a, np.ndarray):
        rows = [[repr(float(v)) for v in row] for row in a]
    else:
        rows = [[mp.nstr(a[i, j], 30) for j in range(a.cols)]
                for i in range(a.rows)]
    with open(path, "w") as fh:
        for row in rows:
            fh.write(",".join(row) + "\n")


def load_matrix_csv(path) -> np.ndarray:
    a = np.loadtxt(path, delimiter=",", ndmin=2)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix in {path} is not square: {a.shape}")
    return a
