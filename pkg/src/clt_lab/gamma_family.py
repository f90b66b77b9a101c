"""Standardized sums of unit exponentials: a non-lattice (h = 0) test family.

For X ~ Exp(1): mu = sigma = 1, alpha = beta_3 = 2, and the sum of n copies is
Gamma(n, 1), so F_n(x) = P(n, n + sqrt(n) x) with P the regularized lower
incomplete gamma function.
"""

from __future__ import annotations

import math

import numpy as np

from .deviation import DeviationExtrema
from .errors import ScaleExceeded
from .normal import std_normal_cdf

MAX_N = 4096
SCAN_LO, SCAN_HI, SCAN_STEP = -12.0, 12.0, 1e-2
REFINE_TOL = 1e-10

EXP_MU, EXP_SIGMA, EXP_ALPHA, EXP_BETA3 = 1.0, 1.0, 2.0, 2.0

_EPS = 1e-17
_MAX_ITER = 100_000
_TINY = 1e-300


def _log_stirling_bracket(a: float) -> float:
    """a*log(a) - a - lgamma(a), without cancellation for large a."""
    if a < 15.0:
        return a * math.log(a) - a - math.lgamma(a)
    r = 1.0 / a
    r2 = r * r
    # Stirling correction lgamma(a) - (a - 1/2) log a + a - log(2 pi)/2
    corr = r * (1 / 12 - r2 * (1 / 360 - r2 * (1 / 1260 - r2 * (1 / 1680 - r2 / 1188))))
    return 0.5 * math.log(a) - 0.5 * math.log(2.0 * math.pi) - corr


def _log_prefactor(a: float, x: float) -> float:
    """log(x^a e^-x / Gamma(a)), written as a*(log1p(d) - d) + bracket with d = x/a - 1."""
    d = (x - a) / a
    return a * (math.log1p(d) - d) + _log_stirling_bracket(a)


def _series(a: float, x: float) -> float:
    """P(a, x) from the power series; for x < a + 1."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if term < total * _EPS:
            return total * math.exp(_log_prefactor(a, x))
    raise ScaleExceeded(f"incomplete gamma series did not converge for a={a}, x={x}")


def _continued_fraction(a: float, x: float) -> float:
    """Q(a, x) from the Legendre continued fraction (modified Lentz); for x >= a + 1."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h * math.exp(_log_prefactor(a, x))
    raise ScaleExceeded(f"incomplete gamma continued fraction did not converge for a={a}, x={x}")


def regularized_lower_gamma(a: float, x: float) -> float:
    if a <= 0:
        raise ValueError("a must be positive")
    if x <= 0.0:
        return 0.0
    if x < a + 1.0:
        return _series(a, x)
    return 1.0 - _continued_fraction(a, x)


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_N:
        raise ScaleExceeded(f"gamma family limited to n <= {MAX_N}")


def gamma_standardized_cdf(n: int, x: float) -> float:
    """F_n(x) for the standardized sum of n unit exponentials."""
    _check_n(n)
    return regularized_lower_gamma(float(n), n + math.sqrt(n) * x)


def smooth_deviation(n: int, x: float) -> float:
    return gamma_standardized_cdf(n, x) - float(std_normal_cdf(x))


def _ternary(f, lo: float, hi: float, maximize: bool) -> tuple[float, float]:
    sign = 1.0 if maximize else -1.0
    while hi - lo > REFINE_TOL:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if sign * f(m1) < sign * f(m2):
            lo = m1
        else:
            hi = m2
    x = 0.5 * (lo + hi)
    return x, f(x)


def smooth_deviation_extrema(n: int) -> DeviationExtrema:
    """Scan D = F_n - Phi on [-12, 12] at step 0.01 and refine each local extremum."""
    _check_n(n)
    xs = np.arange(round((SCAN_HI - SCAN_LO) / SCAN_STEP) + 1) * SCAN_STEP + SCAN_LO

    def dev(x):
        return smooth_deviation(n, x)

    vals = np.array([dev(x) for x in xs])
    inc = np.diff(vals)
    best_sup, x_sup = 0.0, None
    best_inf, x_inf = 0.0, None
    for i in range(1, len(xs) - 1):
        left, right = inc[i - 1], inc[i]
        if left >= 0 and right <= 0 and (left > 0 or right < 0):
            x, v = _ternary(dev, xs[i - 1], xs[i + 1], maximize=True)
            v = max(v, vals[i])
            if v > best_sup:
                best_sup, x_sup = v, x
        elif left <= 0 and right >= 0 and (left < 0 or right > 0):
            x, v = _ternary(dev, xs[i - 1], xs[i + 1], maximize=False)
            v = min(v, vals[i])
            if v < best_inf:
                best_inf, x_inf = v, x
    return DeviationExtrema(
        float(best_sup),
        float(best_inf),
        None,
        None,
        x_sup=None if x_sup is None else float(x_sup),
        x_inf=None if x_inf is None else float(x_inf),
    )


def smooth_kolmogorov_distance(n: int) -> float:
    ext = smooth_deviation_extrema(n)
    return max(ext.sup_dev, -ext.inf_dev)


def smooth_interval_distance(n: int) -> float:
    ext = smooth_deviation_extrema(n)
    return ext.sup_dev - ext.inf_dev
