import random
from math import prod

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from toricheight.lattice import lattice_data, smith_diagonal


def sympy_factors(rows):
    """Nonzero invariant factors from sympy's Smith normal form."""
    if not rows:
        return []
    S = smith_normal_form(Matrix(rows), domain=ZZ)
    return [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]


def test_standard_simplex_generates_everything():
    for n in range(1, 5):
        pts = [[0] * n] + [[int(i == j) for j in range(n)] for i in range(n)]
        L = lattice_data(pts)
        assert L.rank == n and L.index == 1 and L.is_standard


def test_even_points_on_a_line():
    L = lattice_data([[0], [2], [4]])
    assert L.rank == 1 and L.index == 2
    assert L.describe() == "rank 1 in Z^1, index 2"


def test_diagonal_differences():
    L = lattice_data([(0, 0), (1, 1), (1, -1)])
    assert L.rank == 2 and L.index == 2  # |det| = 2


def test_rank_deficient_lattice_has_infinite_index():
    L = lattice_data([(0, 0), (2, 2), (4, 4)])
    assert L.rank == 1 and L.index is None
    assert L.saturation_index == 2
    assert "infinite" in L.describe()


def test_single_point():
    L = lattice_data([(3, 4)])
    assert L.rank == 0 and L.index is None and L.saturation_index == 1


def test_rejects_non_integral_points():
    with pytest.raises(ValueError):
        lattice_data([(0, 0), (0.5, 1)])
    with pytest.raises(ValueError):
        lattice_data([])


def test_smith_diagonal_matches_sympy_on_random_matrices():
    rng = random.Random(7)
    for _ in range(150):
        r, c = rng.randint(1, 5), rng.randint(1, 4)
        rows = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        ours = smith_diagonal(rows)
        assert ours == sympy_factors(rows)
        assert all(b % a == 0 for a, b in zip(ours, ours[1:]))


integer_points = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(-6, 6)] * n), min_size=1, max_size=7))


@settings(max_examples=150, deadline=None)
@given(integer_points, st.randoms(use_true_random=False))
def test_index_invariant_under_permutation_and_translation(pts, rnd):
    L = lattice_data(pts)
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    shift = [rnd.randint(-5, 5) for _ in pts[0]]
    moved = [tuple(a + s for a, s in zip(p, shift)) for p in pts]
    for other in (lattice_data(shuffled), lattice_data(moved)):
        assert other.rank == L.rank
        assert other.index == L.index
        assert other.invariant_factors == L.invariant_factors


@settings(max_examples=100, deadline=None)
@given(integer_points)
def test_full_rank_index_is_gcd_of_maximal_minors(pts):
    L = lattice_data(pts)
    n = len(pts[0])
    if L.rank < n:
        return
    from itertools import combinations
    from math import gcd
    diffs = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
    g = 0
    for rows in combinations(diffs, n):
        g = gcd(g, int(Matrix(rows).det()))
    assert L.index == g == prod(L.invariant_factors)
