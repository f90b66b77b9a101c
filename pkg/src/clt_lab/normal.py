"""Standard normal distribution function, density and second derivative.

Accepts scalars or numpy arrays. Phi is evaluated on the tail side through
erfc, so Phi(-x) == 1 - Phi(x) holds to rounding and small tail values keep
full relative accuracy.
"""

import math

import numpy as np
from scipy.special import erfc

from .errors import NonFiniteInput

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _check(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput("normal functions need finite arguments")
    return arr


def _out(arr, x):
    return float(arr) if np.ndim(x) == 0 else arr


def std_normal_cdf(x):
    arr = _check(x)
    tail = 0.5 * erfc(np.abs(arr) * _INV_SQRT2)
    return _out(np.where(arr < 0, tail, 1.0 - tail), x)


def std_normal_sf(x):
    """1 - Phi(x), accurate in the right tail."""
    return std_normal_cdf(-_check(x))


def std_normal_pdf(x):
    arr = _check(x)
    return _out(INV_SQRT_2PI * np.exp(-0.5 * arr * arr), x)


def std_normal_pdf_d(x):
    """phi'(x) = -x phi(x)."""
    arr = _check(x)
    return _out(-arr * INV_SQRT_2PI * np.exp(-0.5 * arr * arr), x)


def std_normal_pdf_dd(x):
    """phi''(x) = (x^2 - 1) phi(x)."""
    arr = _check(x)
    return _out((arr * arr - 1.0) * INV_SQRT_2PI * np.exp(-0.5 * arr * arr), x)
