"""Exact rational polytopes: convex hulls, volumes and Minkowski sums.

Hulls are computed by gift wrapping.  A facet is grown from a supporting
hyperplane by rotating it around the affine hull of its contact set, and
neighbouring facets are found by rotating around each ridge, where the
ridges come from a recursive hull of the facet's contact points.  Points
are scaled to integers first and every predicate is an exact integer
comparison, so degenerate inputs (many
points on one facet, repeated points, lower-dimensional sets) need no
special treatment beyond projecting to coordinates of the affine hull.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial, gcd, lcm
from typing import NamedTuple, Sequence

from .linalg import (Vector, add, affine_hull, dot, int_pivots, nullspace, primitive, rank,
                     sub, vec)

__all__ = ["Polytope", "VolumeReport", "convex_hull", "volume", "measure",
           "minkowski_sum", "triangulate"]


@dataclass(frozen=True, eq=False)
class Polytope:
    """A convex polytope given by both its vertices and its inequalities.

    ``facets`` are pairs ``(u, c)`` meaning ``<u, x> <= c``; together with the
    ``equations`` ``<w, x> = c`` of the affine hull they describe the polytope
    exactly.  Normals are primitive integer vectors.  ``facet_vertices[k]``
    lists indices into ``vertices`` of the vertices lying on facet ``k``.
    """

    ambient_dim: int
    dim: int
    vertices: tuple[Vector, ...]
    facets: tuple[tuple[Vector, Fraction], ...]
    facet_vertices: tuple[tuple[int, ...], ...]
    equations: tuple[tuple[Vector, Fraction], ...] = field(default=())

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(map(str, v)) + ")" for v in self.vertices)
        return f"Polytope(dim={self.dim}, vertices=[{verts}])"

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, x) -> bool:
        x = vec(x)
        if len(x) != self.ambient_dim:
            raise ValueError("point has the wrong dimension")
        return (all(dot(w, x) == c for w, c in self.equations)
                and all(dot(u, x) <= c for u, c in self.facets))

    @cached_property
    def simplices(self) -> list[tuple[Vector, ...]]:
        return triangulate(self)

    @cached_property
    def _mass(self) -> tuple[Fraction, Vector]:
        # volume and first moment from the triangulation, in integer arithmetic
        n = self.ambient_dim
        zero = tuple(Fraction(0) for _ in range(n))
        if not self.is_full_dimensional:
            return Fraction(0), zero
        den = lcm(*(x.denominator for v in self.vertices for x in v))
        vol = 0
        mom = [0] * n
        for simplex in self.simplices:
            S = [[int(x * den) for x in v] for v in simplex]
            w = abs(_int_det([[a - b for a, b in zip(v, S[0])] for v in S[1:]]))
            vol += w
            for k in range(n):
                mom[k] += w * sum(v[k] for v in S)
        scale = factorial(n) * den ** n
        return (Fraction(vol, scale),
                tuple(Fraction(x, scale * den * (n + 1)) for x in mom))

    @cached_property
    def volume(self) -> Fraction:
        return self._mass[0]

    @cached_property
    def moment(self) -> Vector:
        """First moment ``integral of x dx`` (zero vector when degenerate)."""
        return self._mass[1]

    @cached_property
    def bounding_box(self) -> tuple[Vector, Vector]:
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.ambient_dim))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.ambient_dim))
        return lo, hi


class VolumeReport(NamedTuple):
    value: Fraction
    dim: int
    degenerate: bool


def convex_hull(points: Sequence[Sequence]) -> Polytope:
    """Exact convex hull of a nonempty list of rational points."""
    pts = list(points)
    if not pts:
        raise ValueError("convex hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("dimension mismatch among points")
    return _hull(tuple(sorted({vec(p) for p in pts})))


@lru_cache(maxsize=8192)
def _hull(pts: tuple[Vector, ...]) -> Polytope:
    n = len(pts[0])
    # integer coordinates: scale by a common denominator (order is preserved)
    den = lcm(*(x.denominator for p in pts for x in p))
    pivots, raw, verts = _int_hull(tuple(tuple(int(x * den) for x in p) for p in pts))
    d = len(pivots)
    equations = () if d == n else affine_hull(pts)[3]
    vert_idx = sorted(verts)
    vertices = tuple(pts[j] for j in vert_idx)
    pos = {j: k for k, j in enumerate(vert_idx)}

    facets = []
    facet_vertices = []
    for u, c, contact in raw:
        # <u, den x> <= c
        u = [den * a for a in u]
        g = gcd(*u, c)
        facets.append((tuple(Fraction(a // g) for a in u), Fraction(c // g)))
        facet_vertices.append(tuple(sorted(pos[j] for j in contact if j in pos)))
    order = sorted(range(len(facets)), key=lambda k: facets[k])
    return Polytope(
        ambient_dim=n,
        dim=d,
        vertices=vertices,
        facets=tuple(facets[k] for k in order),
        facet_vertices=tuple(facet_vertices[k] for k in order),
        equations=tuple(equations),
    )


@lru_cache(maxsize=16384)
def _int_hull(P: tuple[tuple[int, ...], ...]):
    """Hull of distinct integer points inside their own affine hull.

    Returns ``(pivots, facets, vertices)``: the pivot coordinates of the
    affine hull, facets ``(u, c, contact)`` with ``<u, x> <= c`` and ``u``
    supported on the pivots, and the set of indices of vertices.
    """
    n = len(P[0])
    pivots = tuple(int_pivots([sub(p, P[0]) for p in P[1:]], n))
    if not pivots:
        return pivots, (), frozenset({0})
    local = [tuple(p[c] for c in pivots) for p in P]
    facets = []
    verts = set()
    for u_loc, c, contact, fv in _full_hull(local):
        u = [0] * n
        for k, col in enumerate(pivots):
            u[col] = u_loc[k]
        facets.append((tuple(u), c, contact))
        verts.update(fv)
    return pivots, tuple(facets), frozenset(verts)


def _int_det(m: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [row[:] for row in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def _idot(u, p) -> int:
    return sum(a * b for a, b in zip(u, p))


def _iprimitive(u, c):
    g = gcd(*u, c)
    return tuple(a // g for a in u), c // g


def _full_hull(P: list[tuple[int, ...]]):
    """Facets of a full-dimensional integer point set in Z^d.

    Returns a list of ``(u, c, contact, vertex_indices)`` with integer ``u, c``
    for the facet ``<u, x> <= c``, the indices of points on it, and the
    indices of the facet's own vertices.
    """
    d = len(P[0])
    npts = len(P)
    if d == 1:
        xs = [p[0] for p in P]
        hi, lo = max(xs), min(xs)
        top = frozenset(j for j, x in enumerate(xs) if x == hi)
        bot = frozenset(j for j, x in enumerate(xs) if x == lo)
        return [((1,), hi, top, top), ((-1,), -lo, bot, bot)]

    # initial facet: start from the hyperplane x_0 = max, rotate until it
    # touches an affinely spanning (d-1)-set
    u = tuple(int(i == 0) for i in range(d))
    c = max(p[0] for p in P)
    ell = [c - p[0] for p in P]
    contact = [j for j in range(npts) if ell[j] == 0]
    while _affine_rank([P[j] for j in contact]) < d - 1:
        t0 = P[contact[0]]
        diffs = [sub(P[j], t0) for j in contact[1:]]
        w = next(b for b in nullspace(diffs, d) if rank([b, u]) == 2)
        w = tuple(int(x) for x in primitive(w))
        beta = _idot(w, t0)
        m = [_idot(w, p) - beta for p in P]
        alpha = max(Fraction(-m[j], ell[j]) for j in range(npts) if ell[j] > 0)
        a, b = alpha.numerator, alpha.denominator
        u, c = _iprimitive(tuple(a * x - b * y for x, y in zip(u, w)), a * c - b * beta)
        ell = [c - _idot(u, p) for p in P]
        contact = [j for j in range(npts) if ell[j] == 0]

    found: dict[frozenset, tuple] = {}
    queue = [(u, c)]
    while queue:
        u, c = queue.pop()
        ell = [c - _idot(u, p) for p in P]
        key = frozenset(j for j in range(npts) if ell[j] == 0)
        if key in found:
            continue
        members = sorted(key, key=lambda j: P[j])
        _, ridges, rverts = _int_hull(tuple(P[j] for j in members))
        found[key] = (u, c, key, frozenset(members[k] for k in rverts))
        for w, gamma, _ in ridges:
            m = [gamma - _idot(w, p) for p in P]
            alpha = max(Fraction(-m[j], ell[j]) for j in range(npts) if ell[j] > 0)
            a, b = alpha.numerator, alpha.denominator
            u2, c2 = _iprimitive(tuple(b * x + a * y for x, y in zip(w, u)), b * gamma + a * c)
            key2 = frozenset(j for j in range(npts) if _idot(u2, P[j]) == c2)
            if key2 not in found:
                queue.append((u2, c2))
    return list(found.values())


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    return len(int_pivots([sub(p, points[0]) for p in points[1:]], len(points[0])))


def triangulate(P: Polytope) -> list[tuple[Vector, ...]]:
    """Pulling triangulation of ``P`` into simplices of dimension ``P.dim``."""
    if P.dim == 0:
        return [(P.vertices[0],)]
    v0 = P.vertices[0]
    out = []
    for fv in P.facet_vertices:
        if 0 in fv:
            continue
        face = convex_hull([P.vertices[i] for i in fv])
        out.extend((v0,) + s for s in triangulate(face))
    return out


def volume(P: Polytope) -> Fraction:
    """Exact Lebesgue volume in the ambient space (0 if degenerate)."""
    return P.volume


def measure(P: Polytope) -> VolumeReport:
    return VolumeReport(P.volume, P.dim, not P.is_full_dimensional)


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("dimension mismatch in Minkowski sum")
    return convex_hull([add(p, q) for p in P.vertices for q in Q.vertices])


def dilate(P: Polytope, k) -> Polytope:
    k = Fraction(k)
    return convex_hull([tuple(k * x for x in v) for v in P.vertices])


def translate(P: Polytope, t) -> Polytope:
    t = vec(t)
    return convex_hull([add(v, t) for v in P.vertices])


def standard_simplex(n: int) -> Polytope:
    pts = [tuple(Fraction(0) for _ in range(n))]
    pts += [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return convex_hull(pts)


def normalized_volume(P: Polytope) -> Fraction:
    """``n! * Vol(P)``."""
    return factorial(P.ambient_dim) * P.volume
