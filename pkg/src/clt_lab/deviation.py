"""Extrema of D(x) = F_n(x) - Phi(x) for a lattice P_n, and the distances built on them.

Between consecutive atoms F_n is constant and Phi increases, so D decreases;
its supremum is approached at an atom (value F_n(a) - Phi(a)) and its infimum
at a left limit (F_n(a-) - Phi(a)), or is the value 0 at +-inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .convolution import StandardizedLatticePMF
from .errors import OracleScaleExceeded
from .normal import std_normal_cdf

BRUTEFORCE_MAX_ATOMS = 4096


@dataclass(frozen=True)
class DeviationExtrema:
    sup_dev: float
    inf_dev: float
    # (atom index, "at" | "left"); None when the extremum is the limit 0 at +-inf
    arg_sup: tuple[int, str] | None
    arg_inf: tuple[int, str] | None
    # locations, filled in for continuous F_n
    x_sup: float | None = None
    x_inf: float | None = None


def compensated_cdf(masses) -> tuple[np.ndarray, np.ndarray]:
    """Running CDF after each atom and just before it (Neumaier accumulation).

    The value after the last atom is pinned to 1.
    """
    k = len(masses)
    at = np.empty(k)
    left = np.empty(k)
    s = 0.0
    c = 0.0
    for i, p in enumerate(np.asarray(masses, dtype=float).tolist()):
        left[i] = s + c
        t = s + p
        if abs(s) >= abs(p):
            c += (s - t) + p
        else:
            c += (p - t) + s
        s = t
        at[i] = s + c
    at[-1] = 1.0
    return at, left


def deviation_extrema(pmf: StandardizedLatticePMF) -> DeviationExtrema:
    at, left = compensated_cdf(pmf.masses)
    phi = std_normal_cdf(pmf.positions)
    upper = at - phi
    lower = left - phi
    i_sup = int(np.argmax(upper))
    i_inf = int(np.argmin(lower))
    sup_dev, arg_sup = (float(upper[i_sup]), (i_sup, "at")) if upper[i_sup] > 0 else (0.0, None)
    inf_dev, arg_inf = (float(lower[i_inf]), (i_inf, "left")) if lower[i_inf] < 0 else (0.0, None)
    return DeviationExtrema(sup_dev, inf_dev, arg_sup, arg_inf)


def kolmogorov_distance(pmf: StandardizedLatticePMF) -> float:
    ext = deviation_extrema(pmf)
    return max(ext.sup_dev, -ext.inf_dev)


def interval_distance(pmf: StandardizedLatticePMF) -> float:
    ext = deviation_extrema(pmf)
    return ext.sup_dev - ext.inf_dev


def distances(pmf: StandardizedLatticePMF) -> tuple[float, float]:
    """(kolmogorov, interval) from a single pass."""
    ext = deviation_extrema(pmf)
    return max(ext.sup_dev, -ext.inf_dev), ext.sup_dev - ext.inf_dev


def interval_distance_bruteforce(pmf: StandardizedLatticePMF) -> float:
    """Max of |(F(b) - Phi(b)) - (F(a) - Phi(a))| over all endpoint pairs.

    Endpoints range over every atom, every left limit, and +-inf. Prefix
    sums are recomputed independently with math.fsum.
    """
    k = len(pmf.masses)
    if k > BRUTEFORCE_MAX_ATOMS:
        raise OracleScaleExceeded(f"brute force limited to {BRUTEFORCE_MAX_ATOMS} atoms")
    masses = np.asarray(pmf.masses, dtype=float).tolist()
    xs = pmf.positions
    values = [0.0]
    for i in range(k):
        phi = float(std_normal_cdf(xs[i]))
        values.append(math.fsum(masses[:i]) - phi)
        values.append(math.fsum(masses[: i + 1]) - phi)
    v = np.array(values)
    return float(np.max(np.abs(v[:, None] - v[None, :])))
