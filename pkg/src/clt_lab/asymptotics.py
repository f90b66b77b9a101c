"""Lattice sawtooth, one-term Esseen expansion, and the two asymptotic limits.

All limits are returned in the scale of sqrt(n) * distance.  The "params"
variants take (h, sigma, alpha) directly so that non-lattice families
(h = 0) can share the formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .convolution import standardized_sum
from .deviation import compensated_cdf
from .errors import DegenerateLaw, UnboundedSpan
from .law import Law, Number, lattice_span, moments, to_rational
from .normal import INV_SQRT_2PI, std_normal_cdf, std_normal_pdf, std_normal_pdf_dd

SQRT_2PI = math.sqrt(2.0 * math.pi)
RESIDUAL_INTERIOR_POINTS = 8


class Branch(str, Enum):
    LATTICE_DOMINANT = "lattice_dominant"  # |alpha| <= h sigma^2
    SKEW_DOMINANT = "skew_dominant"


@dataclass(frozen=True)
class LimitReport:
    branch: Branch
    value: float
    h_term: float
    alpha_term: float
    exp_term: float
    y0: float | None = None


@dataclass(frozen=True)
class PaperConstants:
    c_inf_BE: float
    c_inf_BE_intervals: float
    c_BE_lower: float
    c_BE_upper: float


def constants() -> PaperConstants:
    return PaperConstants(
        c_inf_BE=(math.sqrt(10.0) + 3.0) / (6.0 * SQRT_2PI),
        c_inf_BE_intervals=math.sqrt(2.0 / math.pi),
        c_BE_lower=0.4097,
        c_BE_upper=0.4748,
    )


def _lattice_params(law: Law):
    m = moments(law)
    if not m.sigma > 0:
        raise DegenerateLaw("law has zero variance")
    return float(lattice_span(law)), m


# ---------------------------------------------------------------- sawtooth

def psi_n(law: Law, n: int, x, anchor: Number | None = None):
    """Sawtooth 1/2 - frac(x sigma sqrt(n)/h - n(a - mu)/h).

    ``a`` is any point of the supporting lattice (default: the smallest atom);
    it enters through the centred law, so the jumps sit exactly on the atoms
    of P_n. The result does not depend on the choice of ``a``.
    """
    if len(law) < 2:
        raise UnboundedSpan("psi_n needs a law with at least two atoms")
    h = lattice_span(law)
    m = moments(law)
    a = law.positions[0] if anchor is None else to_rational(anchor)
    if (a - law.positions[0]) % h != 0:
        raise ValueError(f"anchor {a} is not on the lattice of the law")
    shift = (n * (Fraction(m.mu) - a) / h) % 1
    t = np.asarray(x, dtype=float) * (m.sigma * math.sqrt(n) / float(h)) + float(shift)
    out = 0.5 - (t - np.floor(t))
    return float(out) if np.ndim(x) == 0 else out


# ---------------------------------------------------------------- expansion

def _edgeworth(x, n, sigma, alpha, h, psi):
    rn = math.sqrt(n)
    lattice = (h / (sigma * rn)) * psi * std_normal_pdf(x) if h > 0 else 0.0
    return std_normal_cdf(x) + lattice - alpha / (6.0 * sigma**3 * rn) * std_normal_pdf_dd(x)


def edgeworth_cdf(law: Law, n: int, x):
    h, m = _lattice_params(law)
    return _edgeworth(x, n, m.sigma, m.alpha, h, psi_n(law, n, x))


def edgeworth_cdf_params(n: int, x, sigma: float, alpha: float):
    """Expansion without a lattice term (h = 0)."""
    return _edgeworth(x, n, sigma, alpha, 0.0, 0.0)


def expansion_residual_sup(law: Law, n: int) -> float:
    """sup_x |F_n(x) - edgeworth_cdf(law, n, x)| over a lattice-aligned candidate set.

    Candidates: both one-sided limits at every atom of P_n (where F_n and
    psi_n jump together), 8 interior points of every gap, and one extra gap
    beyond each end of the support.
    """
    h, m = _lattice_params(law)
    pmf = standardized_sum(law, n)
    at, left = compensated_cdf(pmf.masses)
    k = len(pmf.masses)
    step = pmf.step_std
    # cell j covers [x_j, x_j + step) with F = cdf_after[j]; j = -1 is the gap before x_0
    cell = np.arange(-1, k)
    cdf_after = np.concatenate(([0.0], at))
    theta = np.arange(1, RESIDUAL_INTERIOR_POINTS + 1) / (RESIDUAL_INTERIOR_POINTS + 1)

    def expansion(xv, psi):
        return _edgeworth(xv, n, m.sigma, m.alpha, h, psi)

    xs_atoms = pmf.positions
    res_at = np.abs(at - expansion(xs_atoms, 0.5))
    res_left = np.abs(left - expansion(xs_atoms, -0.5))
    xi = pmf.offset + step * (cell[:, None] + theta[None, :])
    res_int = np.abs(cdf_after[:, None] - expansion(xi, 0.5 - theta[None, :]))
    return float(max(res_at.max(), res_left.max(), res_int.max()))


# ---------------------------------------------------------------- limits

def kolmogorov_limit_params(h: float, sigma: float, alpha: float) -> float:
    if not sigma > 0:
        raise DegenerateLaw("sigma must be positive")
    return (h / (2.0 * sigma) + abs(alpha) / (6.0 * sigma**3)) / SQRT_2PI


def kolmogorov_limit(law: Law) -> float:
    h, m = _lattice_params(law)
    return kolmogorov_limit_params(h, m.sigma, m.alpha)


def interval_limit_params(h: float, sigma: float, alpha: float) -> LimitReport:
    if not sigma > 0:
        raise DegenerateLaw("sigma must be positive")
    a = abs(alpha)
    if a <= h * sigma**2:
        h_term = h / sigma
        return LimitReport(Branch.LATTICE_DOMINANT, h_term / SQRT_2PI, h_term, 0.0, 0.0)
    ratio = h * sigma**2 / a
    h_term = h / (2.0 * sigma)
    alpha_term = a / (6.0 * sigma**3)
    exp_term = a / (3.0 * sigma**3) * math.exp(-1.5 * (1.0 - ratio))
    return LimitReport(
        Branch.SKEW_DOMINANT,
        (h_term + alpha_term + exp_term) / SQRT_2PI,
        h_term,
        alpha_term,
        exp_term,
        y0=math.sqrt(3.0 - 3.0 * ratio),
    )


def interval_limit(law: Law) -> LimitReport:
    h, m = _lattice_params(law)
    return interval_limit_params(h, m.sigma, m.alpha)


# ---------------------------------------------------------------- profile

def _normalized(law: Law) -> tuple[float, float]:
    """(h/sigma, |alpha|/sigma^3): the law rescaled to sigma = 1 and reflected to alpha >= 0."""
    h, m = _lattice_params(law)
    return h / m.sigma, abs(m.alpha) / m.sigma**3


def profile_f_params(y, h: float, alpha: float):
    """(h + alpha/3)/sqrt(2 pi) + h phi(y) + (alpha/3) phi''(y), for sigma = 1 and alpha >= 0."""
    return (h + alpha / 3.0) * INV_SQRT_2PI + h * std_normal_pdf(y) + alpha / 3.0 * std_normal_pdf_dd(y)


def profile_argmax_params(h: float, alpha: float) -> list[float]:
    if alpha <= h:
        return [0.0]
    y0 = math.sqrt(3.0 - 3.0 * h / alpha)
    return [-y0, y0]


def profile_f(law: Law, y):
    return profile_f_params(y, *_normalized(law))


def profile_argmax(law: Law) -> list[float]:
    return profile_argmax_params(*_normalized(law))
