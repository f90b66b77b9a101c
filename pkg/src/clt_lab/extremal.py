"""Numerical search for laws maximizing the normalized asymptotic constants.

Objective = (sigma^3 / beta_3) * limit, with limit the interval or the
Kolmogorov asymptotic constant of the law. Two searches are provided: a
dense scan over two-point laws on {0, 1} (parametrized by the mass spread
t = |q - p|) refined by golden-section, and a seeded multi-restart
Nelder-Mead over k-atom laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize

from ._parallel import pmap
from .asymptotics import SQRT_2PI
from .errors import DegenerateLaw, InvalidK
from .law import Law, lattice_span, make_law, moments

MAX_K = 8
DEFAULT_LATTICE_M = 12
# masses below this count as absent: the span is that of the atoms kept, so
# faces of the simplex (where h jumps up) are reachable by the descent
PRUNE_MASS = 1e-12


class ObjectiveKind(str, Enum):
    INTERVAL = "interval"
    KOLMOGOROV = "kolmogorov"


class Mode(str, Enum):
    TWO_POINT = "two_point"
    LATTICE = "lattice"
    CONTINUOUS_H0 = "continuous_h0"


@dataclass
class SearchResult:
    best_law: Law
    objective_value: float
    objective_kind: ObjectiveKind
    trace: list[tuple[int, float]] = field(default_factory=list)
    mode: Mode = Mode.LATTICE
    t_star: float | None = None  # two-point scans only


def normalized_objective(kind: ObjectiveKind, h: float, var: float, alpha: float, beta3: float) -> float:
    """(sigma^3/beta_3) * limit, multiplied through so that sigma^3 is never formed.

    Keeps full relative accuracy for laws that are numerically close to a
    point mass, where sigma^3 would underflow.
    """
    if not (var > 0 and beta3 > 0):
        raise DegenerateLaw("objective needs a law with positive variance")
    a = abs(alpha)
    hv = h * var
    if kind is ObjectiveKind.KOLMOGOROV:
        return (hv / 2.0 + a / 6.0) / beta3 / SQRT_2PI
    if a <= hv:
        return hv / beta3 / SQRT_2PI
    return (hv / 2.0 + a / 6.0 + a / 3.0 * math.exp(-1.5 * (1.0 - hv / a))) / beta3 / SQRT_2PI


def _law_objective(kind: ObjectiveKind, law: Law, h: float | None) -> float:
    m = moments(law)
    if h is None:
        if len(law) < 2:
            raise DegenerateLaw("objective needs a law with positive variance")
        h = float(lattice_span(law))
    return normalized_objective(kind, h, m.sigma2, m.alpha, m.beta[3])


def interval_objective(law: Law, h: float | None = None) -> float:
    """(sigma^3/beta_3) times the interval limit; ``h`` overrides the lattice span."""
    return _law_objective(ObjectiveKind.INTERVAL, law, h)


def kolmogorov_objective(law: Law, h: float | None = None) -> float:
    return _law_objective(ObjectiveKind.KOLMOGOROV, law, h)


def objective(kind: ObjectiveKind | str, law: Law, h: float | None = None) -> float:
    kind = ObjectiveKind(kind)
    fn = interval_objective if kind is ObjectiveKind.INTERVAL else kolmogorov_objective
    return fn(law, h)


# closed forms on {0, 1} with spread t, used as test oracles and by the CLI
def two_point_interval_closed_form(t: float) -> float:
    return 2.0 / ((1.0 + t * t) * SQRT_2PI)


def two_point_kolmogorov_closed_form(t: float) -> float:
    return (3.0 + t) / (3.0 * (1.0 + t * t) * SQRT_2PI)


def two_point_law(t: float) -> Law:
    """Law on {0, 1} with masses (1-t)/2 and (1+t)/2, 0 <= t < 1."""
    if not 0.0 <= t < 1.0:
        raise ValueError(f"spread t must lie in [0, 1), got {t}")
    return make_law([(0, (1.0 - t) / 2.0), (1, (1.0 + t) / 2.0)])


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-10):
    """Maximize a unimodal f on [lo, hi]; returns (x, f(x), trace)."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    trace = []
    it = 0
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        it += 1
        trace.append((it, max(fc, fd)))
    candidates = [(f(a), a), (fc, c), (fd, d), (f(b), b)]
    best_val, best_x = max(candidates)
    return best_x, best_val, trace


def two_point_scan(kind: ObjectiveKind | str, grid_size: int = 10_000) -> SearchResult:
    if grid_size < 1000:
        raise ValueError("grid_size must be at least 1000")
    kind = ObjectiveKind(kind)

    def f(t: float) -> float:
        return objective(kind, two_point_law(t))

    grid = np.arange(grid_size) / grid_size
    values = np.array([f(t) for t in grid])
    i = int(np.argmax(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[i + 1] if i + 1 < grid_size else 1.0 - 1.0 / (4 * grid_size)
    t_star, best, trace = golden_section_max(f, lo, hi)
    if values[i] > best:
        t_star, best = float(grid[i]), float(values[i])
    t_star = float(t_star)
    return SearchResult(two_point_law(t_star), float(best), kind, trace, Mode.TWO_POINT, t_star=t_star)


# ---------------------------------------------------------------- k-atom search

def _softmax(logits: np.ndarray) -> np.ndarray:
    z = np.exp(logits - logits.max())
    return z / z.sum()


def _masses_from_params(mass_params: np.ndarray) -> np.ndarray:
    return _softmax(np.concatenate((mass_params, [0.0])))


def _law_from(positions, masses) -> Law:
    pairs = [(x, float(p)) for x, p in zip(positions, masses) if p > PRUNE_MASS]
    total = math.fsum(p for _, p in pairs)
    return make_law([(x, p / total) for x, p in pairs])


def _array_objective(kind: ObjectiveKind, xs: np.ndarray, ps: np.ndarray, h: float) -> float:
    """Objective from float atoms; inner loop of the search only."""
    d = xs - float(ps @ xs)
    try:
        return normalized_objective(
            kind, h, float(ps @ (d * d)), float(ps @ d**3), float(ps @ np.abs(d) ** 3)
        )
    except DegenerateLaw:
        return 0.0


def _one_restart(args):
    idx, ss, k, mode, kind, m, init = args
    rng = np.random.default_rng(ss)

    if mode is Mode.LATTICE:
        if init is not None and idx == 0:
            positions = [Fraction(p) for p in init[0]]
            x0 = np.log(np.asarray(init[1][:-1]) / init[1][-1])
        else:
            positions = [Fraction(int(v)) for v in sorted(rng.choice(m + 1, size=k, replace=False))]
            x0 = rng.normal(size=k - 1)
        xs = np.array([float(p) for p in positions])
        span_cache: dict[tuple[bool, ...], float] = {}

        def span(mask):
            key = tuple(mask)
            if key not in span_cache:
                kept = [p for p, keep in zip(positions, key) if keep]
                span_cache[key] = float(lattice_span(make_law([(p, Fraction(1, len(kept))) for p in kept])))
            return span_cache[key]

        def loss(x):
            ps = _masses_from_params(x)
            mask = ps > PRUNE_MASS
            if mask.sum() < 2:
                return 0.0
            kept = ps[mask] / ps[mask].sum()
            return -_array_objective(kind, xs[mask], kept, span(mask))

        def build(x):
            return _law_from(positions, _masses_from_params(x))
    else:
        if init is not None and idx == 0:
            x0 = np.concatenate(
                (np.log(np.asarray(init[1][:-1]) / init[1][-1]), np.asarray(init[0], dtype=float))
            )
        else:
            x0 = np.concatenate((rng.normal(size=k - 1), rng.normal(size=k)))

        def loss(x):
            return -_array_objective(kind, x[k - 1:], _masses_from_params(x[: k - 1]), 0.0)

        def build(x):
            return _law_from([Fraction(float(v)) for v in x[k - 1:]], _masses_from_params(x[: k - 1]))

    trace: list[tuple[int, float]] = []

    def record(intermediate_result):
        trace.append((len(trace) + 1, -float(intermediate_result.fun)))

    x = x0
    opts = {"xatol": 1e-10, "fatol": 1e-15, "maxiter": 1000 * len(x0), "adaptive": True}
    best = None
    # re-seeding the simplex at the incumbent lets Nelder-Mead escape collapse
    for _ in range(4):
        res = minimize(loss, x, method="Nelder-Mead", options=opts, callback=record)
        improved = best is None or res.fun < best.fun - 1e-15
        if best is None or res.fun < best.fun:
            best = res
        if not improved:
            break
        x = res.x
    law = build(best.x)
    h_override = 0.0 if mode is Mode.CONTINUOUS_H0 else None
    try:
        value = objective(kind, law, h_override) if len(law) > 1 else 0.0
    except DegenerateLaw:
        value = 0.0
    return value, law, trace


def search_k_atoms(
    k: int,
    mode: Mode | str = Mode.LATTICE,
    objective_kind: ObjectiveKind | str = ObjectiveKind.INTERVAL,
    restarts: int = 8,
    seed: int = 0,
    m: int = DEFAULT_LATTICE_M,
    init: Law | None = None,
) -> SearchResult:
    """Best of ``restarts`` seeded Nelder-Mead descents over k-atom laws.

    lattice: positions are k distinct integers from 0..m drawn per restart,
    only the masses move, and h is the exact span of the atoms kept.
    continuous_h0: positions are free reals and the objective uses h = 0.
    ``init`` replaces the first restart's starting point.
    """
    if not 2 <= k <= MAX_K:
        raise InvalidK(f"k must be in 2..{MAX_K}, got {k}")
    mode = Mode(mode)
    if mode is Mode.TWO_POINT:
        raise ValueError("use two_point_scan for the two-point mode")
    kind = ObjectiveKind(objective_kind)
    init_args = None
    if init is not None:
        if len(init) != k:
            raise InvalidK(f"init law has {len(init)} atoms, expected {k}")
        init_args = (init.positions, init.masses)

    seeds = np.random.SeedSequence(seed).spawn(restarts)
    outcomes = pmap(
        _one_restart,
        [(i, ss, k, mode, kind, m, init_args) for i, ss in enumerate(seeds)],
    )
    best_i = max(range(restarts), key=lambda i: outcomes[i][0])
    value, law, trace = outcomes[best_i]
    return SearchResult(law, value, kind, trace, mode)
