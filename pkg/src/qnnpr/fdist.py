"""F distribution CDF and upper quantiles via the regularized incomplete beta function."""
from __future__ import annotations

import math

from .errors import RejectedInput

_EPS = 1e-16
_TINY = 1e-300
_MAX_TERMS = 10_000


def _betacf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete beta continued fraction
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_TERMS + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise RejectedInput(f"betainc needs a, b > 0, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise RejectedInput(f"betainc needs 0 <= x <= 1, got {x}")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # the fraction converges fast on the side of the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def f_cdf(x: float, d1: float, d2: float) -> float:
    """P(F <= x) for F ~ F(d1, d2)."""
    if d1 <= 0 or d2 <= 0:
        raise RejectedInput(f"degrees of freedom must be positive, got {d1}, {d2}")
    if x <= 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    return betainc(d1 / 2.0, d2 / 2.0, d1 * x / (d1 * x + d2))


def f_quantile(alpha: float, d1: int, d2: int, tol: float = 1e-10) -> float:
    """Upper-tail critical value q with P(F(d1, d2) > q) = alpha.

    Bisection on :func:`f_cdf` to absolute tolerance ``tol``.
    """
    if not 0.0 < alpha < 1.0:
        raise RejectedInput(f"alpha must lie in (0, 1), got {alpha}")
    if d1 <= 0 or d2 <= 0:
        raise RejectedInput(f"degrees of freedom must be positive, got {d1}, {d2}")
    target = 1.0 - alpha
    lo, hi = 0.0, 1.0
    while f_cdf(hi, d1, d2) < target:
        lo, hi = hi, hi * 2.0
        if hi > 1e300:
            raise ArithmeticError("F quantile bracket overflow")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f_cdf(mid, d1, d2) < target:
            lo = mid
        else:
            hi = mid
        if mid == lo == hi:
            break
    return 0.5 * (lo + hi)
