"""Small exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; matrices are lists of rows.
Everything here is sized for desk-scale problems (dimension at most a
handful), so plain Gaussian elimination is used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Sequence

Vector = tuple  # tuple[Fraction, ...]


def vec(xs) -> Vector:
    return tuple(Fraction(x) if not isinstance(x, Fraction) else x for x in xs)


def add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(k, u) -> Vector:
    return tuple(k * a for a in u)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1]) if rows else 0


def int_pivots(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Pivot columns of an integer matrix, by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    for c in range(ncols):
        if not m:
            break
        k = next((i for i, r in enumerate(m) if r[c]), None)
        if k is None:
            continue
        piv = m.pop(k)
        a = piv[c]
        nxt = []
        for r in m:
            if r[c]:
                b = r[c]
                r = [a * x - b * y for x, y in zip(r, piv)]
                g = gcd(*r)
                if g > 1:
                    r = [x // g for x in r]
            if any(r):
                nxt.append(r)
        m = nxt
        pivots.append(c)
    return pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of ``{x : rows @ x = 0}``."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in matrix]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def simplex_volume(vertices: Sequence[Vector]) -> Fraction:
    """Lebesgue volume of a full-dimensional simplex given by its d+1 vertices."""
    v0 = vertices[0]
    d = len(vertices) - 1
    return abs(det([sub(v, v0) for v in vertices[1:]])) / factorial(d)


def affine_hull(points: Sequence[Vector]):
    """Affine hull of ``points``.

    Returns ``(base, directions, pivots, equations)``: a base point, a basis of
    the direction space in reduced echelon form, the pivot coordinates (a
    coordinate subset on which projection is injective), and a list of
    ``(normal, offset)`` pairs cutting out the hull.
    """
    base = points[0]
    n = len(base)
    diffs = [sub(p, base) for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    directions, pivots = rref(diffs, n) if diffs else ([], [])
    normals = nullspace(directions, n)
    equations = [(primitive(w), dot(primitive(w), base)) for w in normals]
    return base, [tuple(r) for r in directions], pivots, equations


def primitive(u: Sequence[Fraction], offset: Fraction | None = None):
    """Scale a rational vector (and optional offset) to coprime integers."""
    items = list(u) + ([offset] if offset is not None else [])
    den = lcm(*(Fraction(x).denominator for x in items)) if items else 1
    ints = [int(Fraction(x) * den) for x in items]
    g = gcd(*ints) if ints else 1
    if g == 0:
        g = 1
    out = tuple(Fraction(x // g) for x in ints)
    if offset is None:
        return out
    return out[:-1], out[-1]
