import numpy as np
import pytest

from toricheight.oracle import (FloatRoof, MonteCarloResult, agrees, chow_scale,
                                estimate_integral, estimate_weighted)


def test_tent_values_and_domain():
    f = FloatRoof([[0], [1], [2]], [0.0, 1.0, 0.0])
    X = np.array([[0.0], [0.5], [1.0], [1.5], [2.0]])
    assert f(X) == pytest.approx([0.0, 0.5, 1.0, 0.5, 0.0])
    assert list(f.inside(np.array([[-0.1], [1.0], [2.1]]))) == [False, True, False]
    assert f.box_volume == 2.0


def test_triangle_domain_in_the_plane():
    f = FloatRoof([(0, 0), (2, 0), (0, 2)], [1.0, 1.0, 1.0])
    inside = f.inside(np.array([[0.5, 0.5], [1.5, 1.5]]))
    assert list(inside) == [True, False]
    assert f(np.array([[0.3, 0.3]])) == pytest.approx([1.0])


def test_estimate_of_the_tent_integral():
    est = estimate_integral([[0], [1], [2]], [0.0, 1.0, 0.0], 100_000, seed=0)
    assert agrees(est, 1.0)
    assert est.std_error < 0.01


def test_constant_roof_has_zero_variance_on_its_box():
    est = estimate_integral([(0, 0), (1, 0), (0, 1), (1, 1)], [2.0] * 4, 1000, seed=0)
    assert est.estimate == pytest.approx(2.0) and est.std_error == pytest.approx(0.0, abs=1e-12)
    assert agrees(est, 2.0) and not agrees(est, 2.1)


def test_seed_makes_estimates_reproducible():
    a = estimate_integral([(0, 0), (3, 0), (0, 3)], [0.0, 1.0, -1.0], 5000, seed=9)
    b = estimate_integral([(0, 0), (3, 0), (0, 3)], [0.0, 1.0, -1.0], 5000, seed=9)
    assert a == b


def test_weighted_estimate_combines_roofs_on_shared_samples():
    f = FloatRoof([[0], [2]], [0.0, 2.0])
    g = FloatRoof([[0], [2]], [1.0, 1.0])
    est = estimate_weighted([(f, 1.0), (g, -1.0)], 50_000, seed=2)
    # f - g = x - 1 integrates to 0 over [0, 2]
    assert agrees(est, 0.0)
    assert estimate_weighted([], 10).estimate == 0.0
    with pytest.raises(ValueError):
        estimate_weighted([(f, 1.0)], 1)


def test_z_score_and_scale():
    r = MonteCarloResult(1.0, 0.1, 100, 0)
    assert r.z_score(1.2) == pytest.approx(2.0)
    assert chow_scale(2) == 6 and chow_scale(1, 2) == 1
    with pytest.raises(ValueError):
        FloatRoof([[0], [1]], [0.0])
