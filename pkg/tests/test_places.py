import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from instances import approx
from toricheight.logvalue import LogValue
from toricheight.places import (INF, Coordinate, PlaceWeights, parse_place,
                                product_formula_check, scale_point, valuation,
                                weights_from_point)

F = Fraction
LOG2 = LogValue.log(2)
LOG3 = LogValue.log(3)
ZERO = LogValue.zero()

nonzero = st.fractions(min_value=-50, max_value=50, max_denominator=50).filter(bool)


def test_weights_of_the_conic_point():
    w = weights_from_point([1, 2, 1])
    assert w.places == (2, INF)
    assert w.get(2).tau == (ZERO, -LOG2, ZERO)
    assert w.get(INF).tau == (ZERO, LOG2, ZERO)


def test_torsion_point_has_no_places():
    w = weights_from_point([1, -1])
    assert len(w) == 0 and w.size == 2
    assert product_formula_check(w).passed


def test_weights_of_a_third():
    w = weights_from_point([F(1, 3), 1])
    assert w.get(3).tau == (LOG3, ZERO)
    assert w.get(INF).tau == (-LOG3, ZERO)


def test_product_formula_reports_the_failing_sums():
    w = PlaceWeights.build([(INF, 1, [ZERO, LOG2])])
    report = product_formula_check(w)
    assert not report.passed
    assert report.sums == (ZERO, LOG2)
    assert product_formula_check(weights_from_point([1, 2, 1])).sums == (ZERO,) * 3


def test_radical_point_passes_the_product_formula():
    cube_root = Coordinate(1, 2, F(1, 3))
    w = weights_from_point([F(1, 3), 5, cube_root])
    assert product_formula_check(w).passed
    assert w.get(2).tau[2] == LOG2 * F(-1, 3)
    assert w.get(INF).tau[2] == LOG2 * F(1, 3)


def test_mixed_radical_bases_are_rejected():
    with pytest.raises(ValueError, match="mixed radical bases"):
        weights_from_point([Coordinate(1, 2, F(1, 2)), Coordinate(1, 3, F(1, 2))])


def test_zero_coordinate_is_rejected():
    with pytest.raises(ValueError, match="zero coordinate"):
        weights_from_point([1, 0])
    with pytest.raises(ValueError):
        Coordinate(1, -2, F(1, 2))


def test_place_parsing():
    assert parse_place("inf") == INF and parse_place("7") == 7 and parse_place(11) == 11
    for bad in ("4", "1", "x", 0):
        with pytest.raises(ValueError):
            parse_place(bad)


def test_place_weights_validation():
    with pytest.raises(ValueError, match="twice"):
        PlaceWeights.build([(2, 1, [LOG2]), ("2", 1, [LOG3])])
    with pytest.raises(ValueError, match="positive"):
        PlaceWeights.build([(2, 0, [LOG2])])
    with pytest.raises(ValueError):
        PlaceWeights.build([(2, 1, [LOG2]), (3, 1, [LOG2, LOG3])])
    # trivial places are dropped
    assert len(PlaceWeights.build([(5, 1, [ZERO, ZERO])])) == 0


def test_valuation():
    assert valuation(F(12, 5), 2) == 2
    assert valuation(F(12, 5), 5) == -1
    assert valuation(F(7), 3) == 0
    with pytest.raises(ValueError):
        valuation(F(0), 2)


@settings(max_examples=150)
@given(st.lists(nonzero, min_size=1, max_size=9))
def test_derived_weights_satisfy_the_product_formula(coords):
    assert product_formula_check(weights_from_point(coords)).passed


@settings(max_examples=150)
@given(st.lists(nonzero, min_size=1, max_size=6))
def test_weights_match_floating_point_absolute_values(coords):
    w = weights_from_point(coords)
    arch = w.get(INF)
    for i, x in enumerate(coords):
        expected = math.log(abs(x))
        got = approx(arch.tau[i]) if arch else 0.0
        assert got == pytest.approx(expected, abs=1e-12)
        for e in w.entries:
            if e.place != INF:
                # |x|_p = p^(-v_p(x)) computed by repeated division
                p, k, num, den = e.place, 0, abs(x.numerator), x.denominator
                while num % p == 0:
                    num, k = num // p, k + 1
                while den % p == 0:
                    den, k = den // p, k - 1
                assert e.tau[i] == LogValue({p: -k})


@settings(max_examples=100)
@given(st.lists(st.tuples(nonzero, st.integers(-4, 4)), min_size=1, max_size=6))
def test_integer_radical_exponents_agree_with_rationals(data):
    radical = [Coordinate(q, 2, e) for q, e in data]
    rational = [q * F(2) ** e for q, e in data]
    assert weights_from_point(radical) == weights_from_point(rational)


@settings(max_examples=100)
@given(st.lists(nonzero, min_size=1, max_size=6), nonzero)
def test_scaling_shifts_each_place_by_a_constant(coords, k):
    w, ws = weights_from_point(coords), weights_from_point(scale_point(coords, k))
    for place in set(w.places) | set(ws.places):
        a = w.get(place).tau if w.get(place) else (ZERO,) * len(coords)
        b = ws.get(place).tau if ws.get(place) else (ZERO,) * len(coords)
        diffs = {y - x for x, y in zip(a, b)}
        assert len(diffs) == 1
