"""Finite-support laws with exact rational atom positions.

Positions are :class:`fractions.Fraction` so that the lattice span is exact;
masses are doubles (optionally shadowed by exact rationals when every input
mass was given as a rational).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .errors import EmptyLaw, MassSumOutOfTolerance, NonPositiveMass, UnboundedSpan

Number = Union[int, float, str, Fraction]

MASS_SUM_TOL = 1e-9


def to_rational(value: Number) -> Fraction:
    """Parse an int, Fraction, ``"a/b"`` or decimal string into a Fraction.

    Floats are converted exactly (binary expansion), not by shortest repr.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a number here")
    if isinstance(value, (int, float)):
        if isinstance(value, float) and not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class Law:
    positions: tuple[Fraction, ...]
    masses: tuple[float, ...]
    exact_masses: tuple[Fraction, ...] | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.positions)

    @property
    def atoms(self) -> list[tuple[Fraction, float]]:
        return list(zip(self.positions, self.masses))

    def affine(self, u: Number, v: Number = 0) -> "Law":
        """Image law under x -> u*x + v (u != 0)."""
        u, v = to_rational(u), to_rational(v)
        if u == 0:
            raise ValueError("u must be nonzero")
        masses = self.exact_masses if self.exact_masses is not None else self.masses
        return make_law([(u * x + v, p) for x, p in zip(self.positions, masses)])

    def reflect(self) -> "Law":
        return self.affine(-1, 0)


@dataclass(frozen=True)
class MomentSet:
    mu: float
    sigma2: float
    sigma: float
    alpha: float
    beta: dict[int, float]


def make_law(pairs: Iterable[tuple[Number, Number]]) -> Law:
    pairs = list(pairs)
    if not pairs:
        raise EmptyLaw("a law needs at least one atom")

    exact = all(not isinstance(p, float) for _, p in pairs)
    merged: dict[Fraction, list] = {}
    for x, p in pairs:
        xr = to_rational(x)
        pv = to_rational(p) if exact else float(p)
        if not pv > 0:
            raise NonPositiveMass(f"mass {p!r} at {x!r} is not positive")
        merged.setdefault(xr, []).append(pv)

    positions = tuple(sorted(merged))
    if exact:
        grouped = [sum(merged[x], Fraction(0)) for x in positions]
        total = sum(grouped, Fraction(0))
        if abs(float(total) - 1.0) > MASS_SUM_TOL:
            raise MassSumOutOfTolerance(f"masses sum to {float(total)!r}")
        exact_masses = tuple(p / total for p in grouped)
        masses = [float(p) for p in exact_masses]
    else:
        grouped = [math.fsum(merged[x]) for x in positions]
        total = math.fsum(grouped)
        if abs(total - 1.0) > MASS_SUM_TOL:
            raise MassSumOutOfTolerance(f"masses sum to {total!r}")
        exact_masses = None
        masses = [p / total for p in grouped]

    # largest mass absorbs the renormalization residue
    j = max(range(len(masses)), key=masses.__getitem__)
    masses[j] = 1.0 - math.fsum(masses[:j] + masses[j + 1:])
    return Law(positions, tuple(masses), exact_masses)


def point_mass(x: Number = 0) -> Law:
    return make_law([(x, 1)])


def rademacher() -> Law:
    return make_law([(-1, Fraction(1, 2)), (1, Fraction(1, 2))])


def bernoulli(p: Number) -> Law:
    """Bernoulli law on {0, 1} with P(1) = p, 0 < p < 1."""
    if isinstance(p, float):
        return make_law([(0, 1.0 - p), (1, p)])
    p = to_rational(p)
    return make_law([(0, 1 - p), (1, p)])


def moments(law: Law) -> MomentSet:
    ps = law.masses
    mu = math.fsum(p * float(x) for x, p in zip(law.positions, ps))
    mu_r = Fraction(mu)
    dev = [float(x - mu_r) for x in law.positions]
    beta = {s: math.fsum(p * abs(d) ** s for d, p in zip(dev, ps)) for s in (1, 2, 3, 4)}
    alpha = math.fsum(p * d ** 3 for d, p in zip(dev, ps))
    sigma2 = beta[2]
    return MomentSet(mu=mu, sigma2=sigma2, sigma=math.sqrt(sigma2), alpha=alpha, beta=beta)


def check_membership(law: Law, s: int) -> bool:
    """Whether 0 < beta_s(law) < inf; for finite support that means >= 2 atoms."""
    if s not in (1, 2, 3, 4):
        raise ValueError(f"s must be in 1..4, got {s}")
    return len(law) >= 2


def rational_gcd(a: Fraction, b: Fraction) -> Fraction:
    a, b = abs(a), abs(b)
    return Fraction(
        math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


def _differences(law: Law) -> list[Fraction]:
    if len(law) < 2:
        raise UnboundedSpan("single-atom law: every span is admissible")
    xs = law.positions
    return [b - a for a, b in zip(xs, xs[1:])]


def lattice_span(law: Law) -> Fraction:
    diffs = _differences(law)
    h = diffs[0]
    for d in diffs[1:]:
        h = rational_gcd(h, d)
    return h


def min_gap(law: Law) -> Fraction:
    return min(_differences(law))


def lattice_indices(law: Law, h: Fraction | None = None) -> list[int]:
    """Integer offsets (x - x_min)/h of the atoms."""
    if len(law) == 1:
        return [0]
    if h is None:
        h = lattice_span(law)
    x0 = law.positions[0]
    out = []
    for x in law.positions:
        q = (x - x0) / h
        assert q.denominator == 1
        out.append(q.numerator)
    return out

