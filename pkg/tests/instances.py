"""Seeded random generators shared by the property and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction
from math import log

from toricheight.lattice import lattice_data
from toricheight.logvalue import LogValue
from toricheight.polytope import convex_hull

SMALL_PRIMES = (2, 3, 5, 7)


def random_rational(rng: random.Random, bound: int = 50, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or not nonzero:
            return q


def random_configuration(rng: random.Random, n: int, size: int, box: int,
                         standard: bool = True) -> list[tuple[int, ...]]:
    """``size`` distinct lattice points in ``[0, box]^n`` spanning R^n.

    With ``standard`` the differences also generate Z^n.
    """
    if (box + 1) ** n < size:
        raise ValueError("box too small for that many distinct points")
    while True:
        pts = set()
        while len(pts) < size:
            pts.add(tuple(rng.randint(0, box) for _ in range(n)))
        A = sorted(pts)
        rng.shuffle(A)
        if not convex_hull(A).is_full_dimensional:
            continue
        if standard and not lattice_data(A).is_standard:
            continue
        return A


def random_logvalue(rng: random.Random, bound: int = 6) -> LogValue:
    coeffs = {p: Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
              for p in rng.sample(SMALL_PRIMES, rng.randint(1, 2))}
    return LogValue(coeffs)


def random_heights(rng: random.Random, size: int) -> list[LogValue]:
    return [random_logvalue(rng) if rng.random() < 0.85 else LogValue.zero()
            for _ in range(size)]


def random_point(rng: random.Random, size: int, bound: int = 50) -> list[Fraction]:
    return [random_rational(rng, bound) for _ in range(size)]


def random_shape(rng: random.Random, max_n: int = 3, max_size: int = 9) -> tuple[int, int, int]:
    """``(n, number of points, box)`` with at most ``max_size`` points."""
    n = rng.randint(1, max_n)
    box = {1: 6, 2: 3, 3: 2}[n] if n <= 3 else 1
    lo = n + 1
    hi = min(max_size, (box + 1) ** n)
    return n, rng.randint(lo, hi), box


def random_instance(rng: random.Random, max_n: int = 3, max_size: int = 9, bound: int = 50):
    """A random configuration with ``L_A = Z^n`` and a random rational point."""
    from toricheight.invariants import ToricInstance

    n, size, box = random_shape(rng, max_n, max_size)
    A = random_configuration(rng, n, size, box)
    return ToricInstance.from_point(A, random_point(rng, size, bound))


def approx(x: LogValue) -> float:
    return sum(float(q) * log(p) for p, q in x.coefficients.items())
