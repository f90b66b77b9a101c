import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import wasserstein_distance

from clt_lab.asymptotics import interval_limit, kolmogorov_limit
from clt_lab.errors import DegenerateLaw, InvalidK
from clt_lab.extremal import (
    Mode,
    ObjectiveKind,
    golden_section_max,
    interval_objective,
    kolmogorov_objective,
    normalized_objective,
    objective,
    search_k_atoms,
    two_point_interval_closed_form,
    two_point_kolmogorov_closed_form,
    two_point_law,
    two_point_scan,
)
from clt_lab.law import make_law, moments, point_mass, rademacher

from conftest import random_law

SQRT_2_OVER_PI = 0.7978845608028654  # mpmath
C_INF_BE = 0.40973218370239634  # (sqrt(10)+3)/(6 sqrt(2 pi)), mpmath
T_STAR = 0.16227766016837933  # sqrt(10) - 3, mpmath
H0_BOUND = 0.0961623983722226  # (1/6 + e^{-3/2}/3)/sqrt(2 pi), mpmath


def plugin(kind, law):
    """Independent oracle: sigma^3/beta_3 times the limit, from raw moments."""
    xs = [float(x) for x in law.positions]
    ps = law.masses
    mu = math.fsum(p * x for x, p in zip(xs, ps))
    sig = math.sqrt(math.fsum(p * (x - mu) ** 2 for x, p in zip(xs, ps)))
    b3 = math.fsum(p * abs(x - mu) ** 3 for x, p in zip(xs, ps))
    lim = kolmogorov_limit(law) if kind == "k" else interval_limit(law).value
    return sig**3 / b3 * lim


def test_rademacher_objectives():
    assert interval_objective(rademacher()) == pytest.approx(SQRT_2_OVER_PI, abs=1e-15)
    assert kolmogorov_objective(rademacher()) == pytest.approx(1 / math.sqrt(2 * math.pi), abs=1e-15)


def test_objective_dispatch():
    law = make_law([(0, 0.2), (1, 0.5), (3, 0.3)])
    assert objective("interval", law) == interval_objective(law)
    assert objective(ObjectiveKind.KOLMOGOROV, law) == kolmogorov_objective(law)


def test_objective_matches_plugin():
    rng = random.Random(21)
    for _ in range(300):
        law = random_law(rng, 2, 8, span=12, max_den=3)
        assert interval_objective(law) == pytest.approx(plugin("i", law), rel=1e-12)
        assert kolmogorov_objective(law) == pytest.approx(plugin("k", law), rel=1e-12)


def test_objective_degenerate():
    with pytest.raises(DegenerateLaw):
        interval_objective(point_mass(1))
    with pytest.raises(DegenerateLaw):
        normalized_objective(ObjectiveKind.INTERVAL, 1.0, 0.0, 0.0, 0.0)


def test_h0_objective_plugin():
    assert normalized_objective(ObjectiveKind.INTERVAL, 0.0, 1.0, 2.0, 2.0) == pytest.approx(H0_BOUND, abs=1e-15)


@pytest.mark.parametrize("t", np.linspace(0, 0.99, 100))
def test_two_point_closed_forms(t):
    law = two_point_law(float(t))
    assert interval_objective(law) == pytest.approx(two_point_interval_closed_form(t), abs=1e-12)
    assert kolmogorov_objective(law) == pytest.approx(two_point_kolmogorov_closed_form(t), abs=1e-12)


def test_two_point_law_domain():
    with pytest.raises(ValueError):
        two_point_law(1.0)
    with pytest.raises(ValueError):
        two_point_law(-0.1)


def test_golden_section():
    x, v, trace = golden_section_max(lambda t: -(t - 0.3) ** 2, 0.0, 1.0)
    assert abs(x - 0.3) < 1e-9 and v <= 0 and trace


def test_scan_interval():
    r = two_point_scan("interval")
    assert r.t_star == pytest.approx(0.0, abs=1e-6)
    assert r.objective_value == pytest.approx(SQRT_2_OVER_PI, abs=1e-9)
    assert r.mode is Mode.TWO_POINT and r.trace


def test_scan_kolmogorov():
    r = two_point_scan("kolmogorov")
    assert r.t_star == pytest.approx(T_STAR, abs=1e-6)
    assert r.objective_value == pytest.approx(C_INF_BE, abs=1e-9)
    # stationarity of the closed form: 1 - 6t - t^2 = 0
    assert abs(1 - 6 * r.t_star - r.t_star**2) < 1e-5


def test_scan_kolmogorov_grid_oracle():
    ts = np.linspace(0, 0.999, 200_001)
    vals = (3 + ts) / (3 * (1 + ts**2) * math.sqrt(2 * math.pi))
    assert ts[np.argmax(vals)] == pytest.approx(T_STAR, abs=1e-5)


def test_scan_grid_size():
    with pytest.raises(ValueError):
        two_point_scan("interval", grid_size=999)


def test_search_invalid_k():
    for k in (1, 9):
        with pytest.raises(InvalidK):
            search_k_atoms(k, "lattice", "interval", restarts=1)


def test_search_k2_symmetric_start_stays():
    r = search_k_atoms(2, "lattice", "interval", restarts=1, seed=0, init=rademacher().affine(Fraction(1, 2), Fraction(1, 2)))
    assert r.objective_value == pytest.approx(SQRT_2_OVER_PI, abs=1e-12)


def test_search_deterministic():
    a = search_k_atoms(3, "lattice", "kolmogorov", restarts=4, seed=3)
    b = search_k_atoms(3, "lattice", "kolmogorov", restarts=4, seed=3)
    assert a.objective_value == b.objective_value and a.best_law == b.best_law
    assert a.objective_value <= C_INF_BE + 1e-9


def test_search_lattice_k3_reaches_bound():
    r = search_k_atoms(3, "lattice", "interval", restarts=8, seed=1)
    assert r.objective_value <= SQRT_2_OVER_PI + 1e-9
    assert r.objective_value > SQRT_2_OVER_PI - 1e-3
    assert r.trace


def test_search_continuous_h0_bound():
    r = search_k_atoms(4, "continuous_h0", "interval", restarts=8, seed=0)
    assert r.mode is Mode.CONTINUOUS_H0
    assert r.objective_value <= H0_BOUND + 1e-9


def test_search_two_point_mode_rejected():
    with pytest.raises(ValueError):
        search_k_atoms(2, "two_point", "interval")


# ---------------------------------------------------------------- invariants

def test_upper_bound_certificate():
    rng = random.Random(22)
    worst = 0.0
    for i in range(10_000):
        law = random_law(rng, 2, 8, span=12, max_den=1 + i % 3)
        worst = max(worst, interval_objective(law))
    assert worst <= SQRT_2_OVER_PI + 1e-9


def standardized_w1(law):
    m = moments(law)
    xs = [(float(x) - m.mu) / m.sigma for x in law.positions]
    return wasserstein_distance(xs, [-1.0, 1.0], law.masses, [0.5, 0.5])


def _strictness_laws(rng):
    out = [random_law(rng, 2, 8, span=12, max_den=2) for _ in range(2000)]
    # near-extremal shapes: perturbed symmetric two-point laws, possibly with a small third atom
    for _ in range(1000):
        t = rng.uniform(0, 0.2)
        pairs = [(0, (1 - t) / 2), (1, (1 + t) / 2)]
        if rng.random() < 0.5:
            eps = rng.uniform(0, 0.05)
            pairs = [(x, p * (1 - eps)) for x, p in pairs] + [(rng.choice([-2, -1, 2, 3, Fraction(1, 2)]), eps)]
        out.append(make_law(pairs))
    return out


def test_strictness_away_from_extremizer():
    rng = random.Random(23)
    far = 0
    for law in _strictness_laws(rng):
        if standardized_w1(law) > 0.05:
            far += 1
            assert interval_objective(law) < SQRT_2_OVER_PI - 1e-4, law
    assert far > 1000


def test_total_variation_is_not_a_usable_distance():
    # standardized supports are disjoint from {-1, 1}, so TV = 1, yet the objective is within 1e-5 of the bound
    law = two_point_law(0.001)
    m = moments(law)
    xs = [(float(x) - m.mu) / m.sigma for x in law.positions]
    assert all(abs(abs(x) - 1) > 1e-4 for x in xs)
    assert interval_objective(law) > SQRT_2_OVER_PI - 1e-5


@pytest.mark.parametrize("u, v", [(3, 1), (-2, 0), (Fraction(-1, 3), Fraction(7, 2))])
def test_objectives_affine_invariant(u, v):
    rng = random.Random(24)
    for _ in range(100):
        law = random_law(rng, 2, 6)
        img = law.affine(u, v)
        assert interval_objective(img) == pytest.approx(interval_objective(law), rel=1e-12)
        assert kolmogorov_objective(img) == pytest.approx(kolmogorov_objective(law), rel=1e-12)
