import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from clt_lab.law import make_law

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def random_positions(rng: random.Random, k: int, span: int = 30, max_den: int = 8) -> list[Fraction]:
    out: set[Fraction] = set()
    while len(out) < k:
        out.add(Fraction(rng.randint(-span, span), rng.randint(1, max_den)))
    return sorted(out)


def random_law(rng: random.Random, k_min: int = 2, k_max: int = 8, rational_masses: bool = False, **kw):
    k = rng.randint(k_min, k_max)
    xs = random_positions(rng, k, **kw)
    if rational_masses:
        ws = [rng.randint(1, 20) for _ in xs]
        tot = sum(ws)
        return make_law([(x, Fraction(w, tot)) for x, w in zip(xs, ws)])
    ws = [rng.uniform(0.05, 1.0) for _ in xs]
    tot = sum(ws)
    return make_law([(x, w / tot) for x, w in zip(xs, ws)])


def random_integer_law(rng: random.Random, k_min=2, k_max=6, top=6, rational_masses=True):
    """Law on a small integer grid; keeps convolution supports short."""
    k = rng.randint(k_min, k_max)
    xs = sorted(rng.sample(range(top + 1), k))
    ws = [rng.randint(1, 9) for _ in xs]
    tot = sum(ws)
    if rational_masses:
        return make_law([(x, Fraction(w, tot)) for x, w in zip(xs, ws)])
    return make_law([(x, w / tot) for x, w in zip(xs, ws)])


@st.composite
def laws(draw, min_atoms=2, max_atoms=6):
    k = draw(st.integers(min_atoms, max_atoms))
    nums = draw(st.lists(st.integers(-40, 40), min_size=k, max_size=k, unique=True))
    den = draw(st.integers(1, 6))
    ws = draw(st.lists(st.integers(1, 50), min_size=k, max_size=k))
    tot = sum(ws)
    return make_law([(Fraction(x, den), Fraction(w, tot)) for x, w in zip(nums, ws)])


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
