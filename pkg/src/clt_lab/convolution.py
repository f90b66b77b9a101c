"""n-fold self-convolution of a lattice law and the standardized sum P_n.

The base law is re-indexed on its own lattice, so the n-fold sum lives on
``base + k*step`` with ``step`` the exact lattice span. Powers are formed by
square-and-multiply; every pairwise product is a direct convolution with
Neumaier-compensated accumulation per output cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegenerateLaw, OracleScaleExceeded, SupportOverflow
from .law import Law, MomentSet, lattice_indices, lattice_span, moments

DEFAULT_SUPPORT_CAP = 2**20
ORACLE_MAX_N = 64


@dataclass(frozen=True)
class SumPMF:
    n: int
    base: Fraction
    step: Fraction
    masses: np.ndarray  # float64, or a tuple of Fractions from the exact oracle

    @property
    def positions(self) -> list[Fraction]:
        return [self.base + k * self.step for k in range(len(self.masses))]


@dataclass(frozen=True)
class StandardizedLatticePMF:
    n: int
    offset: float
    step_std: float
    masses: np.ndarray
    mu: float
    sigma: float

    @property
    def positions(self) -> np.ndarray:
        return self.offset + self.step_std * np.arange(len(self.masses))

    def __len__(self) -> int:
        return len(self.masses)


def convolve_compensated(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Direct convolution; each output cell summed with Neumaier compensation."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) > len(b):
        a, b = b, a
    out = np.zeros(len(a) + len(b) - 1)
    comp = np.zeros_like(out)
    m = len(b)
    for i, ai in enumerate(a):
        if ai == 0.0:
            continue
        y = ai * b
        s = out[i:i + m]
        t = s + y
        comp[i:i + m] += np.where(np.abs(s) >= np.abs(y), (s - t) + y, (y - t) + s)
        out[i:i + m] = t
    return out + comp


def _base_vector(law: Law) -> tuple[np.ndarray, Fraction]:
    if len(law) == 1:
        return np.array([1.0]), Fraction(1)
    h = lattice_span(law)
    idx = lattice_indices(law, h)
    vec = np.zeros(idx[-1] + 1)
    vec[idx] = law.masses
    return vec, h


def self_convolve(law: Law, n: int, cap: int = DEFAULT_SUPPORT_CAP) -> SumPMF:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    vec, h = _base_vector(law)
    size = n * (len(vec) - 1) + 1
    if size > cap:
        raise SupportOverflow(f"n-fold support has {size} cells, cap is {cap}")

    result = None
    power = vec
    k = n
    while k:
        if k & 1:
            result = power if result is None else convolve_compensated(result, power)
        k >>= 1
        if k:
            power = convolve_compensated(power, power)

    result = np.clip(result, 0.0, None)
    # cells that underflowed to zero at either end are dropped
    nz = np.flatnonzero(result)
    lead = int(nz[0])
    result = result[lead:int(nz[-1]) + 1]
    result /= math.fsum(result)
    return SumPMF(n=n, base=n * law.positions[0] + lead * h, step=h, masses=result)


def standardize(sum_pmf: SumPMF, base_moments: MomentSet) -> StandardizedLatticePMF:
    if not base_moments.sigma > 0:
        raise DegenerateLaw("cannot standardize a law with zero variance")
    n = sum_pmf.n
    scale = base_moments.sigma * math.sqrt(n)
    offset = float(sum_pmf.base - n * Fraction(base_moments.mu)) / scale
    return StandardizedLatticePMF(
        n=n,
        offset=offset,
        step_std=float(sum_pmf.step) / scale,
        masses=np.asarray(sum_pmf.masses, dtype=float),
        mu=base_moments.mu,
        sigma=base_moments.sigma,
    )


def standardized_sum(law: Law, n: int, cap: int = DEFAULT_SUPPORT_CAP) -> StandardizedLatticePMF:
    """P_n for the given law, i.e. ``standardize(self_convolve(law, n), moments(law))``."""
    m = moments(law)
    if not m.sigma > 0:
        raise DegenerateLaw("cannot standardize a law with zero variance")
    return standardize(self_convolve(law, n, cap), m)


def exact_convolve_oracle(law: Law, n: int) -> SumPMF:
    """Exact rational n-fold convolution, for tests.

    Uses the law's exact masses when present, otherwise the exact binary value
    of each double mass.
    """
    if n > ORACLE_MAX_N:
        raise OracleScaleExceeded(f"exact oracle limited to n <= {ORACLE_MAX_N}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ps: Sequence[Fraction] = law.exact_masses or [Fraction(p) for p in law.masses]
    if len(law) == 1:
        idx, h = [0], Fraction(1)
    else:
        h = lattice_span(law)
        idx = lattice_indices(law, h)
    denom = math.lcm(*(p.denominator for p in ps))
    weights = dict(zip(idx, (p.numerator * (denom // p.denominator) for p in ps)))
    acc = [1]
    for _ in range(n):
        nxt = [0] * (len(acc) + idx[-1])
        for i, w_acc in enumerate(acc):
            if w_acc:
                for j, w in weights.items():
                    nxt[i + j] += w_acc * w
        acc = nxt
    total = denom**n
    masses = tuple(Fraction(w, total) for w in acc)
    return SumPMF(n=n, base=n * law.positions[0], step=h, masses=masses)
