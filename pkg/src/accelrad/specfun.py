"""Special functions behind the closed-form rates.

Three evaluators, all self-contained (no scipy):

* ``bessel_j``      -- integer-order Bessel J_n, ascending power series for
                       |x| <= 12 and normalized downward (Miller) recurrence
                       above.
* ``anger_j``       -- Anger function of real order,
                       (1/pi) * int_0^pi cos(x sin t - nu t) dt,
                       by adaptive composite Gauss-Legendre quadrature.
* ``rational_period_integral`` -- one-period average
                       (1/2pi) * int_{-pi}^{pi} exp(i(x sin(q s) - p s)) ds,
                       which vanishes unless q divides p; this is the
                       mathematical form of the sideband selection rule.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._quadrature import refine_to_tolerance
from .errors import ConvergenceError

_SERIES_CUTOFF = 12.0
_MILLER_RESCALE = 1e250


@dataclass(frozen=True)
class AccuracyBudget:
    """Accuracy contract for series and quadrature evaluation."""

    rel_tol: float = 1e-10
    max_terms: int = 10**6

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_BUDGET = AccuracyBudget()


def bessel_j(n: int, x: float, budget: AccuracyBudget = DEFAULT_BUDGET) -> float:
    """Bessel function J_n(x) for non-negative integer order.

    Satisfies J_n(-x) = (-1)^n J_n(x) by construction.
    """
    if n != int(n) or n < 0:
        raise ValueError(f"order must be a non-negative integer, got {n}")
    n = int(n)
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x}")
    if x < 0:
        return -bessel_j(n, -x, budget) if n % 2 else bessel_j(n, -x, budget)
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x <= _SERIES_CUTOFF:
        return _bessel_series(n, x, budget)
    return _bessel_miller(n, x)


def bessel_j_orders(n_max: int, x: float) -> np.ndarray:
    """All of J_0(x) .. J_{n_max}(x) from a single downward recurrence.

    One Miller pass yields every order at once, which is what the sweep
    engine wants for whole-column evaluation.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x}")
    sign = -1.0 if x < 0 else 1.0
    x = abs(x)
    if x == 0.0:
        out = np.zeros(n_max + 1)
        out[0] = 1.0
        return out
    out = np.empty(n_max + 1)
    _miller_pass(n_max, x, out)
    if sign < 0:
        out[1::2] *= -1.0
    return out


def _bessel_series(n: int, x: float, budget: AccuracyBudget) -> float:
    # J_n(x) = sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!), built multiplicatively
    # so large n underflows gracefully instead of overflowing n!.
    half = 0.5 * x
    term = 1.0
    for i in range(1, n + 1):
        term *= half / i
    if term == 0.0:
        return 0.0
    total = term
    peak = abs(term)
    h2 = half * half
    for k in range(1, budget.max_terms + 1):
        term *= -h2 / (k * (n + k))
        total += term
        mag = abs(term)
        peak = max(peak, mag)
        if mag <= 1e-2 * budget.rel_tol * abs(total) or mag <= 1e-17 * peak:
            return total
    raise ConvergenceError(
        f"Bessel series for J_{n}({x}) did not converge in "
        f"{budget.max_terms} terms",
        error_estimate=abs(term),
    )


def _miller_start(n: int, x: float) -> int:
    # Start far enough above both the order and the turning point k ~ x that
    # the downward recurrence has fully locked onto the minimal solution.
    base = max(n, int(x))
    m = base + 16 + int(2.5 * math.sqrt(base + 1.0))
    return m + (m & 1)


def _miller_pass(n_max: int, x: float, out: np.ndarray) -> float:
    """Downward recurrence normalized by J_0 + 2*sum_k J_2k = 1.

    Fills ``out`` with orders 0..n_max and returns J_{n_max}.
    """
    m = _miller_start(n_max, x)
    j_up = 0.0           # J_{k+1}
    j_cur = 1e-30        # J_k seed
    norm = 2.0 * j_cur if m % 2 == 0 else 0.0
    for k in range(m, 0, -1):
        j_down = (2.0 * k / x) * j_cur - j_up
        j_up = j_cur
        j_cur = j_down
        idx = k - 1
        if abs(j_cur) > _MILLER_RESCALE:
            scale = 1.0 / _MILLER_RESCALE
            j_cur *= scale
            j_up *= scale
            norm *= scale
            out[idx + 1:] *= scale
        if idx <= n_max:
            out[idx] = j_cur
        if idx % 2 == 0:
            norm += j_cur if idx == 0 else 2.0 * j_cur
    out /= norm
    return out[n_max]


def _bessel_miller(n: int, x: float) -> float:
    scratch = np.empty(n + 1)
    return _miller_pass(n, x, scratch)


def anger_j(nu: float, x: float, budget: AccuracyBudget = DEFAULT_BUDGET) -> float:
    """Anger function J_nu(x) = (1/pi) * int_0^pi cos(x sin t - nu t) dt.

    Coincides with bessel_j at integer order.  Raises ConvergenceError when
    the node budget runs out before the tolerance is met.
    """
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise ValueError(f"nu and x must be finite, got nu={nu}, x={x}")

    def integrand(t):
        return np.cos(x * np.sin(t) - nu * t)

    panels = max(16, math.ceil(4.0 * (abs(x) + abs(nu))))
    value, _, _ = refine_to_tolerance(
        integrand, 0.0, math.pi, panels, budget.rel_tol, budget.max_terms)
    return value / math.pi


def rational_period_integral(x: float, p: int, q: int,
                             budget: AccuracyBudget = DEFAULT_BUDGET) -> float:
    """One-period average (1/2pi) * int_{-pi}^{pi} e^{i(x sin(q s) - p s)} ds.

    p/q need not be reduced.  Vanishes whenever p/q is not an integer; equals
    bessel_j(p//q, x) when q divides p.  The integral is real by symmetry:
    the imaginary part is checked against 1e-12 and discarded.
    """
    if p != int(p) or q != int(q) or p < 1 or q < 1:
        raise ValueError(f"p and q must be positive integers, got p={p}, q={q}")
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x}")
    p, q = int(p), int(q)

    def integrand(s):
        return np.exp(1j * (x * np.sin(q * s) - p * s))

    panels = max(16, math.ceil(4.0 * (abs(x) + p)))
    value, _, _ = refine_to_tolerance(
        integrand, -math.pi, math.pi, panels, budget.rel_tol, budget.max_terms)
    value /= 2.0 * math.pi
    if abs(value.imag) >= 1e-12:
        raise ConvergenceError(
            f"rational-period integral returned imaginary part "
            f"{value.imag:g}; expected < 1e-12 by symmetry",
            error_estimate=abs(value.imag),
        )
    return float(value.real)
