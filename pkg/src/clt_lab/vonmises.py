"""von Mises moment inequality eta*beta_s <= 2*beta_{s+1} for eta-separated discrete laws.

Everything is compared after rescaling the law to unit variance, so a fixed
absolute tolerance is meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .asymptotics import SQRT_2PI, Branch, interval_limit
from .errors import InvalidS
from .law import Law, lattice_span, min_gap, moments

TOL = 1e-12


@dataclass(frozen=True)
class VonMisesReport:
    eta: Fraction
    s: int
    lhs: float  # eta * beta_s, raw units
    rhs: float  # 2 * beta_{s+1}, raw units
    holds: bool
    equality: bool
    predicted_equality: bool
    # both sides after rescaling to unit variance; holds/equality are decided here
    lhs_unit: float = 0.0
    rhs_unit: float = 0.0


def _is_symmetric_two_point(law: Law) -> bool:
    return len(law) == 2 and law.masses[0] == law.masses[1]


def predicted_equality(law: Law, s: int) -> bool:
    """Equality cases: any law on two points eta apart when s = 1;
    a point mass or the symmetric two-point law when s > 1."""
    if len(law) == 1:
        return True
    if s == 1:
        return len(law) == 2
    return _is_symmetric_two_point(law)


def vonmises_check(law: Law, s: int) -> VonMisesReport:
    if s not in (1, 2, 3):
        raise InvalidS(f"s must be 1, 2 or 3, got {s}")
    if len(law) == 1:
        return VonMisesReport(Fraction(0), s, 0.0, 0.0, True, True, True)
    eta = min_gap(law)
    m = moments(law)
    sig = m.sigma
    lhs_u = float(eta) / sig * (m.beta[s] / sig**s)
    rhs_u = 2.0 * m.beta[s + 1] / sig ** (s + 1)
    holds = lhs_u <= rhs_u + TOL
    equality = abs(lhs_u - rhs_u) <= TOL * max(1.0, abs(rhs_u))
    lhs = float(eta) * m.beta[s]
    rhs = 2.0 * m.beta[s + 1]
    return VonMisesReport(eta, s, lhs, rhs, holds, equality, predicted_equality(law, s), lhs_u, rhs_u)


def log_moment_convexity(law: Law) -> bool:
    """Midpoint convexity of t -> log beta_t on {1,2,3} and {2,3,4}.

    Strict convexity is additionally required unless |X - mu| is constant
    (the symmetric two-point law). Point masses are skipped (True).
    """
    if len(law) == 1:
        return True
    m = moments(law)
    sig = m.sigma
    lb = {t: math.log(m.beta[t] / sig**t) for t in (1, 2, 3, 4)}
    gaps = [lb[1] + lb[3] - 2 * lb[2], lb[2] + lb[4] - 2 * lb[3]]
    if any(g < -TOL for g in gaps):
        return False
    if _is_symmetric_two_point(law):
        return True
    return all(g > 0 for g in gaps)


@dataclass(frozen=True)
class PairIdentity:
    two_beta2: float
    e_sq_diff: float
    e_abs_diff: float
    e_abs_centered: float
    eta: float
    identity_ok: bool
    chain_ok: bool


def pair_identity(law: Law) -> PairIdentity:
    """E(X-Y)^2 and E|X-Y| for independent copies, by double summation over atom pairs."""
    m = moments(law)
    sig = m.sigma if m.sigma > 0 else 1.0
    xs = [float(x) / sig for x in law.positions]
    ps = law.masses
    e_sq = math.fsum(p * q * (x - y) ** 2 for x, p in zip(xs, ps) for y, q in zip(xs, ps))
    e_abs = math.fsum(p * q * abs(x - y) for x, p in zip(xs, ps) for y, q in zip(xs, ps))
    eta = float(min_gap(law)) / sig if len(law) > 1 else 0.0
    two_beta2 = 2.0 * m.beta[2] / sig**2
    e_abs_c = m.beta[1] / sig
    return PairIdentity(
        two_beta2=two_beta2,
        e_sq_diff=e_sq,
        e_abs_diff=e_abs,
        e_abs_centered=e_abs_c,
        eta=eta,
        identity_ok=abs(two_beta2 - e_sq) <= TOL * max(1.0, e_sq),
        chain_ok=e_sq >= eta * e_abs - TOL and eta * e_abs >= eta * e_abs_c - TOL,
    )


def pair_identity_check(law: Law) -> bool:
    r = pair_identity(law)
    return r.identity_ok and r.chain_ok


@dataclass(frozen=True)
class CorollaryReport:
    branch_lattice: bool
    lhs: float  # sqrt(2 pi) * limit
    middle: float
    rhs: float
    holds: bool
    equality: bool


def corollary_chain(law: Law) -> CorollaryReport:
    """The two inequality chains bounding sqrt(2 pi) * L by moment ratios.

    Lattice branch: h/sigma <= 2 beta_3/sigma^3, equality iff symmetric two-point.
    Skew branch:    sqrt(2 pi) L < |alpha|/sigma^3 <= beta_3/sigma^3.
    """
    m = moments(law)
    h = float(lattice_span(law))
    sig = m.sigma
    rep = interval_limit(law)
    scaled = SQRT_2PI * rep.value
    b3 = m.beta[3] / sig**3
    if rep.branch is Branch.LATTICE_DOMINANT:
        rhs = 2.0 * b3
        holds = h / sig <= rhs + TOL
        eq = abs(h / sig - rhs) <= TOL * max(1.0, rhs)
        return CorollaryReport(True, scaled, h / sig, rhs, holds, eq)
    a3 = abs(m.alpha) / sig**3
    return CorollaryReport(False, scaled, a3, b3, scaled < a3 and a3 <= b3 + TOL, False)
