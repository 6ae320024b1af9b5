"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also printed when output is captured.
"""

import math
import random
import time
from fractions import Fraction
from math import factorial

import pytest

from instances import (approx, random_configuration, random_heights, random_instance,
                       random_logvalue, random_point, random_rational, random_shape)
from toricheight.envelope import (integrate, mixed_integral, roof, sup_convolution,
                                  verify_roof)
from toricheight.invariants import (MultiInstance, ToricInstance, chow_weight, degree,
                                    monomial_bezout, normalized_height,
                                    normalized_multiheight,
                                    translate_point)
from toricheight.lattice import lattice_data
from toricheight.logvalue import LogValue
from toricheight.oracle import agrees, estimate_integral
from toricheight.places import product_formula_check, weights_from_point
from toricheight.polytope import convex_hull, minkowski_sum, standard_simplex, volume

LOG2 = LogValue.log(2)
F = Fraction


@pytest.fixture
def say(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {criterion}] {'PASS' if ok else 'FAIL'}: {detail}")
    return emit


def conic():
    return ToricInstance.from_point([[0], [1], [2]], [1, 2, 1])


def test_criterion_1_worked_example(say):
    start = time.perf_counter()
    X = conic()
    deg, h = degree(X), normalized_height(X)
    elapsed = time.perf_counter() - start
    mc_ok = True
    for _, _, f in X.roofs():
        est = estimate_integral(f.points, [approx(t) for t in f.heights], 100_000, seed=1)
        mc_ok &= agrees(est, approx(integrate(f)))
    ok = deg == 2 and h.coefficients == {2: 2} and elapsed < 1.0 and mc_ok
    say(1, ok, f"degree {deg}, height {h}, {elapsed:.3f}s, Monte-Carlo agrees: {mc_ok}")
    assert deg == 2
    assert h.coefficients == {2: Fraction(2)}
    assert elapsed < 1.0
    assert mc_ok


def projective_height(point):
    """Weil height of a rational projective point: log of the largest coprime integer."""
    den = math.lcm(*(x.denominator for x in point))
    ints = [int(x * den) for x in point]
    g = math.gcd(*ints)
    return LogValue.log(max(abs(x) // g for x in ints))


def test_criterion_2_bezout_exactness(say):
    cases = [([[0], [1], [2]], [1, 2, 1], [1, 0, 0], [F(0), F(0), F(1)]),
             ([[0], [1]], [1, 2], [0, 1], [F(1), F(0)])]
    results = []
    for A, alpha, b, cut in cases:
        start = time.perf_counter()
        r = monomial_bezout(ToricInstance.from_point(A, alpha), b)
        elapsed = time.perf_counter() - start
        direct = projective_height(cut)
        results.append((r.height, direct, elapsed))
    ok = all(h.is_zero() and h == d and t < 1.0 for h, d, t in results)
    say(2, ok, "; ".join(f"height {h}, {t:.3f}s" for h, _, t in results))
    for h, d, t in results:
        assert h.is_zero() and h == d
        assert t < 1.0


# criterion 3 -----------------------------------------------------------------

def prop_a(rng):
    """Derived weights satisfy the product formula."""
    size = rng.randint(2, 9)
    return product_formula_check(weights_from_point(random_point(rng, size))).passed


def prop_b(rng):
    return normalized_height(random_instance(rng)) >= 0


def prop_c(rng):
    n, size, box = random_shape(rng)
    A = random_configuration(rng, n, size, box)
    alpha = random_point(rng, size)
    s = [random_rational(rng) for _ in range(n)]
    moved = translate_point(A, alpha, s)
    return normalized_height(ToricInstance.from_point(A, alpha)) \
        == normalized_height(ToricInstance.from_point(A, moved))


def prop_d(rng):
    X = random_instance(rng)
    tau = random_heights(rng, X.N + 1)
    c = random_logvalue(rng)
    A = X.configuration
    return chow_weight(A, [t + c for t in tau]) \
        == chow_weight(A, tau) + c * ((X.n + 1) * degree(X))


# sizes for the mixed-integral property: cost grows quickly with n, so n = 3
# uses small configurations in {0, 1}^3
E_SHAPES = [(1, 9, 8)] * 7 + [(2, 9, 3)] * 11 + [(3, 5, 1)] * 2


def _roof(rng, n, size, box):
    A = random_configuration(rng, n, rng.randint(n + 1, size), box, standard=False)
    return roof(A, random_heights(rng, len(A)))


def prop_e(rng):
    n, size, box = rng.choice(E_SHAPES)
    fs = [_roof(rng, n, size, box) for _ in range(n + 1)]
    g = _roof(rng, n, size, box)
    perm = fs[:]
    rng.shuffle(perm)
    symmetric = mixed_integral(fs) == mixed_integral(perm)
    k = rng.randrange(n + 1)
    left, right = fs[:], fs[:]
    left[k] = sup_convolution(fs[k], g)
    right[k] = g
    linear = mixed_integral(left) == mixed_integral(fs) + mixed_integral(right)
    diagonal = mixed_integral([g] * (n + 1)) == integrate(g) * factorial(n + 1)
    return symmetric and linear and diagonal


def prop_f(rng):
    X = random_instance(rng)
    b = [rng.randint(0, 3) for _ in range(X.N + 1)]
    r = monomial_bezout(X, b)
    return r.inequality_holds is True and r.height <= r.base_height * r.D


def prop_g(rng):
    X = random_instance(rng)
    while X.N < X.n + 1:  # the index entry n+1 must not exceed N
        X = random_instance(rng)
    return normalized_multiheight(MultiInstance((X,), (X.n + 1,))) == normalized_height(X)


PROPERTIES = [
    ("a", "product formula for derived weights", prop_a),
    ("b", "normalized height is nonnegative", prop_b),
    ("c", "height invariant under the torus action", prop_c),
    ("d", "Chow weight shift law", prop_d),
    ("e", "mixed integral symmetry, linearity, diagonal collapse", prop_e),
    ("f", "effective Bezout inequality", prop_f),
    ("g", "multiheight with one block equals the height", prop_g),
]


def test_criterion_3_property_suite(say):
    start = time.perf_counter()
    failures = []
    for label, text, prop in PROPERTIES:
        rng = random.Random(f"acceptance-{label}")
        t0 = time.perf_counter()
        bad = sum(1 for _ in range(200) if not prop(rng))
        say(f"3{label}", bad == 0,
            f"{text}: {200 - bad}/200 in {time.perf_counter() - t0:.1f}s")
        if bad:
            failures.append(label)
    elapsed = time.perf_counter() - start
    say(3, not failures and elapsed < 300, f"total {elapsed:.1f}s, failing: {failures or 'none'}")
    assert not failures
    assert elapsed < 300


def test_criterion_4_oracle_equivalence(say):
    rng = random.Random("acceptance-oracle")
    start = time.perf_counter()
    hits = 0
    for k in range(50):
        n = rng.randint(1, 2)
        size = rng.randint(n + 1, 9)
        A = random_configuration(rng, n, size, {1: 8, 2: 3}[n])
        tau = random_heights(rng, size)
        f = roof(A, tau)
        est = estimate_integral(A, [approx(t) for t in tau], 100_000, seed=k)
        hits += agrees(est, approx(integrate(f)))
    elapsed = time.perf_counter() - start
    ok = hits >= 47 and elapsed < 120
    say(4, ok, f"{hits}/50 within 3 standard errors in {elapsed:.1f}s")
    assert hits >= 47
    assert elapsed < 120


def shoelace(vertices):
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)
    pts = sorted(vertices, key=lambda v: math.atan2(float(v[1] - cy), float(v[0] - cx)))
    return abs(sum(pts[i][0] * pts[i - 1][1] - pts[i - 1][0] * pts[i][1]
                   for i in range(len(pts)))) / 2


def test_criterion_5_geometry_kernel(say):
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    hexagon = minkowski_sum(square, convex_hull([(0, 0), (1, 1)]))
    table = {
        "segment": convex_hull([[0], [1], [2]]).vertices == ((0,), (2,)),
        "triangle": set(convex_hull([(0, 0), (2, 0), (0, 2), (1, 1)]).vertices)
        == {(0, 0), (2, 0), (0, 2)},
        "square facets": len(square.facets) == 4,
        "simplex volume": volume(standard_simplex(2)) == F(1, 2),
        "square volume": volume(square) == 1,
        "triangle volume": volume(convex_hull([(0, 0), (2, 0), (0, 2)])) == 2,
        "point sum": minkowski_sum(square, convex_hull([(F(1, 2), 3)])).vertices
        == tuple(sorted((x + F(1, 2), y + 3) for x, y in square.vertices)),
        "segment sum": minkowski_sum(convex_hull([[0], [1]]), convex_hull([[0], [1]]))
        == convex_hull([[0], [2]]),
        # area checked against the shoelace formula
        "hexagon": len(hexagon.vertices) == 6 and volume(hexagon) == shoelace(hexagon.vertices),
        "lattice Z^n": all(lattice_data([[0] * n] + [[int(i == j) for j in range(n)]
                                                       for i in range(n)]).index == 1
                           for n in range(1, 5)),
        "lattice 2Z": lattice_data([[0], [2], [4]]).index == 2,
        "lattice diagonal": lattice_data([(0, 0), (1, 1), (1, -1)]).index == 2,
    }
    rng = random.Random("acceptance-cells")
    cell_failures = 0
    for _ in range(100):
        n = rng.randint(1, 3)
        A = random_configuration(rng, n, rng.randint(n + 1, 9), {1: 8, 2: 3, 3: 2}[n],
                                 standard=False)
        f = roof(A, random_heights(rng, len(A)))
        total = sum((c.polytope.volume for c in f.cells), F(0))
        cell_failures += total != f.domain.volume or bool(verify_roof(f))
    failed = [k for k, v in table.items() if not v]
    ok = not failed and cell_failures == 0
    say(5, ok, f"example rows failing: {failed or 'none'}; "
               f"roofs with bad cell volumes: {cell_failures}/100; hexagon area "
               f"{volume(hexagon)}")
    assert not failed
    assert cell_failures == 0
