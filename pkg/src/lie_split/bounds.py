"""Norm-bound recursions for the palindromic splitting and the convergence
domain they certify.

Both recursions have the same shape as the term recursion, with brackets
replaced by products of norms: two rows of nonnegative scalars advance
through odd levels k, each level yields a bound delta_k on the degree-k
exponent norm, and the splitting converges where the tail ratio
delta_{k+2}/delta_k stays below one.

The *crude* variant is scale free (it bounds coefficients with x = y = 1 and
convergence is then governed by lambda(x+y)); the *refined* variant keeps the
two norms x, y separate, which certifies a much larger, asymmetric domain.

All rows are computed in 64-bit floats with a guard: whenever any entry
leaves [1e-300, 1e300] the computation restarts transparently in log space
(factorial seeds underflow around depth 170, so deep runs take the log path).
Ratios and verdicts always come from logs, immune to overflow.
"""

from __future__ import annotations

import math
from typing import Callable, List, Sequence, Tuple

import numpy as np

_LINEAR_LO = 1e-300
_LINEAR_HI = 1e300
_TAIL = 10  # ratios averaged for the limit estimate


def _log_factorials(top: int) -> np.ndarray:
    return np.array([math.lgamma(l + 1) for l in range(top + 1)])


def crude_log_seeds(top: int) -> Tuple[np.ndarray, np.ndarray]:
    """log of 1/l! and 1/(2 l!) for l = 0..top."""
    lf = _log_factorials(top)
    return -lf, -lf - math.log(2.0)


def refined_log_seeds(x: float, y: float, top: int) -> Tuple[np.ndarray, np.ndarray]:
    """Norm-aware level-1 rows, in logs.

    main[0] = tilde[0] = (x+y)/2
    main[l] = ( y^l x / 2 + y (x+y)^l ) / l!
    tilde[l] = y^l x / (2 l!)
    """
    if x < 0 or y < 0:
        raise ValueError("norms must be nonnegative")
    lf = _log_factorials(top)
    ls = np.arange(top + 1, dtype=float)
    lx = math.log(x) if x > 0 else -math.inf
    ly = math.log(y) if y > 0 else -math.inf
    lxy = math.log(x + y) if x + y > 0 else -math.inf
    half = math.log(2.0)
    # 0 * (-inf) at l = 0 produces a transient nan; both rows get their
    # l = 0 entry overwritten right below, so the invalid flag is noise
    with np.errstate(invalid="ignore"):
        term_a = ls * ly + lx - half      # y^l x / 2
        term_b = ly + ls * lxy            # y (x+y)^l
        main = np.logaddexp(term_a, term_b) - lf
    tilde = term_a - lf
    l0 = lxy - half                       # (x+y)/2
    main[0] = l0
    tilde[0] = l0
    return main, tilde


def _advance_log_row(row: np.ndarray, log_delta: float, k: int) -> np.ndarray:
    """Level step in log space: out[l] = logsum_j [ (2 delta)^j / j! row[l-kj] ],
    then out[k-1] gains k*delta (the two-line correction)."""
    top = len(row) - 1
    new = row.copy()
    if log_delta != -math.inf:
        base = math.log(2.0) + log_delta
        j = 1
        while k * j <= top:
            shift = j * base - math.lgamma(j + 1)
            new[k * j:] = np.logaddexp(new[k * j:], row[: top + 1 - k * j] + shift)
            j += 1
        new[k - 1] = np.logaddexp(math.log(k) + log_delta, row[k - 1])
    return new


def _advance_linear_row(row: np.ndarray, delta: float, k: int) -> np.ndarray:
    top = len(row) - 1
    new = row.copy()
    if delta > 0:
        base = 2.0 * delta
        j = 1
        while k * j <= top:
            shift = base ** j / math.factorial(j)
            new[k * j:] += row[: top + 1 - k * j] * shift
            j += 1
        new[k - 1] = k * delta + row[k - 1]
    return new


def _linear_ok(row: np.ndarray) -> bool:
    if not np.all(np.isfinite(row)):
        return False
    nz = row[row != 0]
    if nz.size == 0:
        return True
    return bool(np.all(nz >= _LINEAR_LO) and np.all(nz <= _LINEAR_HI))


def _log_deltas_from_seeds(main: np.ndarray, tilde: np.ndarray,
                           depth: int) -> np.ndarray:
    """delta_k in logs for odd k = 3..depth, via the log-space rows."""
    deltas = []
    k = 3
    while k <= depth:
        ld = np.logaddexp(main[k - 1], tilde[k - 1]) - math.log(2 * k)
        deltas.append(ld)
        if k + 2 > depth:
            break
        main = _advance_log_row(main, ld, k)
        tilde = _advance_log_row(tilde, ld, k)
        k += 2
    return np.array(deltas)


def _deltas_linear_from_seeds(main: np.ndarray, tilde: np.ndarray,
                              depth: int):
    """Linear-path twin of the above; returns None when the guard trips."""
    if not (_linear_ok(main) and _linear_ok(tilde)):
        return None
    deltas = []
    k = 3
    while k <= depth:
        d = (main[k - 1] + tilde[k - 1]) / (2 * k)
        deltas.append(d)
        if k + 2 > depth:
            break
        main = _advance_linear_row(main, d, k)
        tilde = _advance_linear_row(tilde, d, k)
        if not (_linear_ok(main) and _linear_ok(tilde)):
            return None
        k += 2
    return np.array(deltas)


def _seeds_fit_linear(logs: np.ndarray) -> bool:
    finite = logs[np.isfinite(logs)]
    return bool(
        np.all(finite >= math.log(_LINEAR_LO))
        and np.all(finite <= math.log(_LINEAR_HI))
    )


def _log_deltas(seed_fn: Callable[[], Tuple[np.ndarray, np.ndarray]],
                depth: int) -> np.ndarray:
    if depth < 3 or depth % 2 == 0:
        raise ValueError("depth must be an odd integer >= 3")
    log_main, log_tilde = seed_fn()
    if _seeds_fit_linear(log_main) and _seeds_fit_linear(log_tilde):
        with np.errstate(over="ignore"):
            linear = _deltas_linear_from_seeds(
                np.exp(log_main), np.exp(log_tilde), depth
            )
        if linear is not None:
            with np.errstate(divide="ignore"):
                return np.log(linear)
    return _log_deltas_from_seeds(log_main, log_tilde, depth)


def _tail_ratio(log_deltas: np.ndarray) -> float:
    """Geometric mean of the last _TAIL consecutive ratios delta_{k+2}/delta_k.
    An all-vanishing tail counts as ratio 0 (trivially convergent)."""
    if len(log_deltas) < 2:
        raise ValueError("need at least two levels for a ratio")
    tail = log_deltas[-(_TAIL + 1):]
    if tail[-1] == -math.inf:
        return 0.0
    diffs = np.diff(tail)
    finite = diffs[np.isfinite(diffs)]
    if finite.size == 0:
        return 0.0
    return float(np.exp(np.mean(finite)))


# ---------------------------------------------------------------------------
# Public surface

def crude_r_sequence(depth: int = 401):
    """Scale-free level bounds r_3, r_5, ... r_depth, their limiting ratio,
    and the certified threshold on lambda(x+y).

    Returns (ks, r_values, r_limit, threshold) with threshold = 1/sqrt(limit).
    """
    if depth < 21:
        raise ValueError("depth must be at least 21 for a stable limit")
    top = depth - 1
    logs = _log_deltas(lambda: crude_log_seeds(top), depth)
    ratio = _tail_ratio(logs)
    ks = np.arange(3, depth + 1, 2)
    return ks, np.exp(logs), ratio, 1.0 / math.sqrt(ratio)


def refined_deltas(x: float, y: float, depth: int = 401) -> np.ndarray:
    """Norm-aware bounds delta_3, delta_5, ... delta_depth for given x, y.
    Values that leave the double range come back saturated (0 or inf); use
    converges() for verdicts, it works on logs throughout."""
    top = depth - 1
    logs = _log_deltas(lambda: refined_log_seeds(x, y, top), depth)
    with np.errstate(over="ignore"):
        return np.exp(logs)


def converges(x: float, y: float, depth: int = 401) -> Tuple[bool, float]:
    """Certified-convergence verdict for norms (x, y) at the given depth.

    Returns (verdict, ratio_tail): the geometric mean of the last ten ratios
    delta_{k+2}/delta_k; the verdict is ratio_tail < 1.
    """
    if depth < 21:
        raise ValueError("depth must be at least 21 for a stable verdict")
    top = depth - 1
    logs = _log_deltas(lambda: refined_log_seeds(x, y, top), depth)
    ratio = _tail_ratio(logs)
    return ratio < 1.0, ratio


def y_max(x: float, depth: int = 401, tol: float = 1e-3,
          y_cap: float = 8.0) -> float:
    """Largest y (within tol) with a certified-convergent (x, y), by
    doubling then bisection.  (x, 0) always converges."""
    lo = 0.0
    hi = 1.0
    while hi <= y_cap and converges(x, hi, depth)[0]:
        lo = hi
        hi *= 2.0
    if hi > y_cap:
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if converges(x, mid, depth)[0]:
            lo = mid
        else:
            hi = mid
    return lo


def boundary_scan(x_values: Sequence[float], depth: int = 401,
                  tol: float = 1e-3, mirror: bool = False) -> List[Tuple[float, float]]:
    """Boundary of the certified domain: rows (x, y_max).

    With mirror=True each row takes the larger of the direct bound and the
    bound of the role-swapped splitting (largest y with (y, x) certified),
    i.e. the union of the domain with its reflection.
    """
    out = []
    for x in x_values:
        ym = y_max(x, depth, tol)
        if mirror:
            ym = max(ym, _y_max_swapped(x, depth, tol))
        out.append((float(x), ym))
    return out


def _y_max_swapped(x: float, depth: int, tol: float, y_cap: float = 8.0) -> float:
    lo = 0.0
    hi = 1.0
    while hi <= y_cap and converges(hi, x, depth)[0]:
        lo = hi
        hi *= 2.0
    if hi > y_cap:
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if converges(mid, x, depth)[0]:
            lo = mid
        else:
            hi = mid
    return lo
