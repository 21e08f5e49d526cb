"""Shared helpers: seeded random rationals, matrices, and configurations."""

import random
from fractions import Fraction

import pytest

from trigvee.configuration import build_configuration
from trigvee.exactnum import RatMatrix


def rand_fraction(rng: random.Random, lo: int = -9, hi: int = 9, max_den: int = 9) -> Fraction:
    num = rng.randint(lo, hi)
    den = rng.randint(1, max_den)
    return Fraction(num, den)


def rand_nonzero_fraction(rng: random.Random, lo: int = -9, hi: int = 9) -> Fraction:
    while True:
        f = rand_fraction(rng, lo, hi)
        if f != 0:
            return f


def rand_matrix(rng: random.Random, n: int) -> RatMatrix:
    return RatMatrix([[rand_fraction(rng) for _ in range(n)] for _ in range(n)])


def rand_nonsingular(rng: random.Random, n: int) -> RatMatrix:
    while True:
        m = rand_matrix(rng, n)
        if m.det() != 0:
            return m


def rand_configuration(rng: random.Random, dim: int, max_covectors: int = 6):
    """A random small configuration: integer covectors, nonzero rational mults.

    May be degenerate; callers filter on gram_det when needed.
    """
    count = rng.randint(2, max_covectors)
    entries = []
    seen = set()
    while len(entries) < count:
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(dim))
        if all(x == 0 for x in v):
            continue
        if v in seen or tuple(-x for x in v) in seen:
            continue
        seen.add(v)
        entries.append((v, rand_nonzero_fraction(rng, -4, 4)))
    return build_configuration(dim, entries)


@pytest.fixture
def rng():
    return random.Random(20240817)
