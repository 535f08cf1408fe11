"""Fractional differences of periodic functions.

The forward difference of fractional order beta > 0 with step delta is

    (D_delta^beta f)(x) = sum_{v>=0} binom(beta, v) (-1)^v f(x + v*delta).

On a trigonometric polynomial it acts coefficientwise: the coefficient of
e^{ikx} is multiplied by the principal-branch power (1 - e^{ik*delta})^beta,
which is the fast path (``apply_diff``).  ``apply_diff_series`` sums the
defining series directly and serves as the independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, InvalidArgumentError
from .signal import TrigPoly, evaluate

TWO_PI = 2.0 * math.pi

_SERIES_CAP = 10_000_000


def frac_binom(beta: float, nu: int) -> float:
    """Generalised binomial coefficient binom(beta, nu) for integer nu >= 0.

    Computed by the stable product recurrence
    binom(beta, nu) = binom(beta, nu-1) * (beta - nu + 1)/nu.
    """
    nu = int(nu)
    if nu < 0:
        raise InvalidArgumentError("nu must be a nonnegative integer")
    b = 1.0
    # (j - 1.0) first: "beta - j + 1.0" would absorb a tiny beta into -1+1
    for j in range(1, nu + 1):
        b *= (beta - (j - 1.0)) / j
    return b


def binom_log_abs(beta: float, nu: int) -> float:
    """log |binom(beta, nu)| (beta non-integer, nu >= 1)."""
    j = np.arange(1, int(nu) + 1, dtype=float)
    return float(np.sum(np.log(np.abs((beta - (j - 1.0)) / j))))


def _tail_constant(beta: float) -> tuple[int, float]:
    """(m, log C) with |binom(beta, v)| <= C * v^(-beta-1) for v >= m.

    m = ceil(beta)+1; the scaled magnitudes v^(beta+1) |binom(beta, v)|
    decrease from m on, so C = |binom(beta, m)| m^(beta+1) is a safe
    (conservative) constant.
    """
    m = int(math.ceil(beta)) + 1
    return m, binom_log_abs(beta, m) + (beta + 1.0) * math.log(m)


def binom_abs_sum(beta: float, tol: float = 1e-10) -> float:
    """Upper bound for sum_{v>=0} |binom(beta, v)|.

    Exact (2^beta) for integer beta; otherwise a partial sum plus the
    analytic tail bound.  Within tol of the true sum when the required
    term count fits under the series cap; for small fractional beta the
    cap binds and the conservative tail term keeps the result an upper
    bound at reduced accuracy (the tail decays like N^-beta).
    """
    if beta <= 0.0:
        raise InvalidArgumentError("beta must be positive")
    if beta == round(beta):
        return 2.0 ** beta
    m, log_c = _tail_constant(beta)
    # choose N with C*N^-beta/beta <= tol
    log_n = (log_c - math.log(beta) - math.log(tol)) / beta
    n = max(m, int(math.ceil(math.exp(min(log_n, 20 * math.log(10.0))))))
    n = min(n, _SERIES_CAP)
    j = np.arange(1, n + 1, dtype=float)
    partial = 1.0 + np.sum(np.abs(np.cumprod((beta - (j - 1.0)) / j)))
    tail = math.exp(log_c - beta * math.log(n)) / beta
    return float(partial + tail)


@dataclass(frozen=True)
class DiffSymbol:
    """Fourier symbol of a fractional difference on frequencies -M..M."""
    beta: float
    delta: float
    degree: int
    values: np.ndarray = field(repr=False)

    def value(self, k: int) -> complex:
        return complex(self.values[k + self.degree])


def symbol_values(beta: float, delta: float, k) -> np.ndarray:
    """(1 - e^{ik*delta})^beta on an array of integer frequencies.

    Principal branch via the polar form
    (2 sin(theta/2))^beta * exp(i*beta*(theta-pi)/2), theta = k*delta
    reduced to [0, 2pi); exactly 0 on the lattice theta = 0.
    """
    if beta <= 0.0:
        raise InvalidArgumentError("beta must be positive")
    k = np.asarray(k, dtype=float)
    theta = np.mod(k * delta, TWO_PI)
    s = np.maximum(2.0 * np.sin(0.5 * theta), 0.0)
    mag = s ** beta
    out = mag * np.exp(0.5j * beta * (theta - math.pi))
    out[s == 0.0] = 0.0
    return out


def diff_symbol(beta: float, delta: float, degree: int) -> DiffSymbol:
    """Symbol table for ``apply_diff`` on polynomials of the given degree."""
    if degree < 0:
        raise InvalidArgumentError("degree must be nonnegative")
    k = np.arange(-degree, degree + 1)
    if delta == 0.0:
        vals = np.zeros(k.shape, dtype=complex)
    else:
        vals = symbol_values(beta, delta, k)
    return DiffSymbol(beta, delta, degree, vals)


def apply_diff(f: TrigPoly, beta: float, delta: float) -> TrigPoly:
    """Fractional difference of a trigonometric polynomial (multiplier path)."""
    sym = diff_symbol(beta, delta, f.degree)
    return f.with_coeffs(f.coeffs * sym.values)


def apply_diff_series(f: TrigPoly, beta: float, delta: float, x: float,
                      tol: float = 1e-8, cap: int = _SERIES_CAP) -> complex:
    """Pointwise fractional difference by direct series summation (oracle).

    The truncation index N is chosen so that the discarded tail is below
    tol: sum_{v>N} |binom(beta, v)| * sup|f| <= tol, with sup|f| bounded
    by the coefficient mass sum|c_k|.
    """
    if beta <= 0.0:
        raise InvalidArgumentError("beta must be positive")
    fmax = float(np.sum(np.abs(f.coeffs)))
    if fmax == 0.0:
        return 0.0j
    needed = None
    log_c = 0.0
    if beta == round(beta):
        n = int(round(beta))
    else:
        m, log_c = _tail_constant(beta)
        log_n = (log_c + math.log(fmax) - math.log(beta)
                 - math.log(tol)) / beta
        needed = max(m, int(math.ceil(
            math.exp(min(log_n, 20 * math.log(10.0))))))
        n = min(needed, cap)
    total = 0.0j
    carry = 1.0
    chunk = 1 << 14
    lo = 0
    while lo <= n:
        hi = min(lo + chunk, n + 1)
        nu = np.arange(lo, hi, dtype=float)
        if lo == 0:
            s = np.empty(hi - lo)
            s[0] = 1.0
            if hi > 1:
                s[1:] = np.cumprod((nu[1:] - 1.0 - beta) / nu[1:])
        else:
            s = carry * np.cumprod((nu - 1.0 - beta) / nu)
        carry = s[-1]
        vals = evaluate(f, x + nu * delta)
        total += complex(np.dot(s, vals))
        lo = hi
    if needed is not None and needed > cap:
        # the capped partial sum travels with the error so callers can
        # still inspect how far the oracle got
        achieved = fmax * math.exp(log_c - beta * math.log(n)) / beta
        raise ConvergenceError(
            f"difference series needs {needed} terms for tol={tol} at "
            f"beta={beta} (cap {cap})",
            partial=total, achieved=achieved)
    return total
