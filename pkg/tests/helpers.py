"""Random instance builders shared by the test modules."""

import random
from fractions import Fraction

from nikishin_hp import DiscreteMeasure, NikishinGenerator, Perturbation
from nikishin_hp.exact import Polynomial


def random_points(rng, lo, hi, count, den=97):
    pts = set()
    while len(pts) < count:
        pts.add(lo + (hi - lo) * Fraction(rng.randint(0, den), den))
    return sorted(pts)


def random_measure(rng, lo, hi, count, sign=1):
    return DiscreteMeasure(
        (x, sign * Fraction(rng.randint(1, 9), rng.randint(1, 9))) for x in random_points(rng, lo, hi, count)
    )


def random_generator(rng, m, max_atoms=5, signed=True):
    """Generator on intervals that alternate between ``[-1, 1]`` and ``[2, 3]``-like slots.

    Consecutive intervals are disjoint; non-consecutive ones may coincide,
    which the definition allows.
    """
    slots = [(Fraction(-1), Fraction(1)), (Fraction(2), Fraction(3)), (Fraction(-4), Fraction(-3))]
    measures, intervals = [], []
    prev = None
    for _ in range(m):
        choice = rng.choice([s for s in slots if s != prev])
        prev = choice
        sign = rng.choice([1, -1]) if signed else 1
        measures.append(random_measure(rng, choice[0], choice[1], rng.randint(1, max_atoms), sign))
        intervals.append(choice)
    return NikishinGenerator(measures, intervals)


def pole_perturbation(c, v=1):
    return Perturbation(Polynomial([v]), Polynomial([-Fraction(c), 1]))


def zero_perturbations(m):
    return [Perturbation.zero() for _ in range(m)]


def seeded(seed):
    return random.Random(seed)
