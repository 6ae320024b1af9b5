"""Roof functions: upper envelopes of lifted point configurations.

Given points ``a_0, ..., a_N`` in Q^n and heights ``tau_i`` (LogValues), the
roof is the concave piecewise-affine function on ``Q = conv(a_i)`` whose
graph is the upper boundary of ``conv((a_i, tau_i))``.  Its domains of
linearity form the coherent subdivision of ``Q`` induced by the heights.

The subdivision is built by walking the dual graph.  A cell is an affine
function ``h`` with ``h(a_i) >= tau_i`` for every ``i`` whose contact set
``{i : h(a_i) = tau_i}`` spans the affine hull of the configuration.  To
cross a ridge of a cell, ``h`` is tilted by a multiple of the rational
affine function vanishing on the ridge until it meets the first point beyond
it.  Only rational multiples and exact LogValue comparisons are needed, so
ties yield one canonical (possibly non-simplicial) cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Sequence

import numpy as np

from .linalg import Vector, add, int_pivots, nullspace, primitive, sub, vec
from .logvalue import FILTER_TOLERANCE, LogValue, lv_max, lv_min
from .polytope import Polytope, _int_hull, convex_hull

__all__ = [
    "WeightedConfig",
    "Cell",
    "RoofFunction",
    "upper_envelope",
    "roof",
    "evaluate",
    "integrate",
    "sup_convolution",
    "mixed_integral",
    "verify_roof",
]

ZERO = LogValue.zero()


def _lv(x) -> LogValue:
    if isinstance(x, LogValue):
        return x
    if x == 0:
        return ZERO
    raise TypeError(f"heights must be LogValues, got {x!r}")


@dataclass(frozen=True)
class WeightedConfig:
    """A configuration of rational points with one LogValue height each."""

    points: tuple[Vector, ...]
    weights: tuple[LogValue, ...]

    def __init__(self, points, weights):
        pts = tuple(vec(p) for p in points)
        ws = tuple(_lv(w) for w in weights)
        if not pts:
            raise ValueError("a weighted configuration needs at least one point")
        if len(pts) != len(ws):
            raise ValueError(f"{len(pts)} points but {len(ws)} weights")
        if any(len(p) != len(pts[0]) for p in pts):
            raise ValueError("dimension mismatch among points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", ws)

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0])


@dataclass(frozen=True, eq=False)
class Cell:
    """One domain of linearity of a roof and its affine function."""

    indices: tuple[int, ...]
    polytope: Polytope
    gradient: tuple[LogValue, ...]
    constant: LogValue

    def value(self, x) -> LogValue:
        """The cell's affine function at any ``x`` in R^n."""
        total = self.constant
        for g, xi in zip(self.gradient, x):
            if xi:
                total = total + g * xi
        return total

    def integral(self) -> LogValue:
        P = self.polytope
        if not P.is_full_dimensional:
            return ZERO
        total = self.constant * P.volume
        for g, m in zip(self.gradient, P.moment):
            if m:
                total = total + g * m
        return total


@dataclass(frozen=True, eq=False)
class RoofFunction:
    points: tuple[Vector, ...]
    heights: tuple[LogValue, ...]
    domain: Polytope
    cells: tuple[Cell, ...]
    on_roof: tuple[bool, ...]

    @property
    def ambient_dim(self) -> int:
        return self.domain.ambient_dim

    def __call__(self, x) -> LogValue:
        return evaluate(self, x)

    def graph_vertices(self) -> list[tuple[Vector, LogValue]]:
        """Vertices of the subdivision with their roof values."""
        seen: dict[Vector, LogValue] = {}
        for cell in self.cells:
            for v in cell.polytope.vertices:
                if v not in seen:
                    seen[v] = cell.value(v)
        return sorted(seen.items())

    def subdivision(self) -> list[Polytope]:
        return [c.polytope for c in self.cells]


def roof(points, heights) -> RoofFunction:
    return upper_envelope(WeightedConfig(points, heights))


def upper_envelope(w: WeightedConfig) -> RoofFunction:
    """Roof of the lifted configuration together with its coherent subdivision."""
    pts, tau = w.points, w.weights
    n = w.ambient_dim
    count = len(pts)
    domain = convex_hull(pts)
    # walk in integer coordinates Y = den * y on the affine hull; a gradient G
    # with respect to Y is den * G with respect to y
    den = lcm(*(x.denominator for p in pts for x in p))
    full = [tuple(int(x * den) for x in p) for p in pts]
    pivots = int_pivots([sub(p, full[0]) for p in full[1:]], n)
    d = len(pivots)
    Y = [tuple(p[c] for c in pivots) for p in full]

    walk = _Walk(Y, tau)
    top = lv_max(tau)
    h = ((ZERO,) * d, top)
    contact = walk.contact(h)

    # rotate the horizontal supporting hyperplane until it touches a
    # contact set spanning all d directions
    while _affine_rank([Y[j] for j in contact]) < d:
        t0 = Y[contact[0]]
        diffs = [sub(Y[j], t0) for j in contact[1:]]
        normal = [int(x) for x in primitive(nullspace([r for r in diffs if any(r)], d)[0])]
        beta = _idot(normal, t0)
        m = walk.functional(normal, beta)
        if not (m < 0).any():
            normal = [-a for a in normal]
            beta = -beta
            m = -m
        # add mu * (<normal, Y> - beta), which vanishes on the contact set
        h, contact = walk.tilt(h, m, [-a for a in normal], -beta)

    cells: dict[frozenset, Cell] = {}
    crossed: set[frozenset] = set()
    queue = [(h, frozenset(contact))]
    while queue:
        h, key = queue.pop()
        if key in cells:
            continue
        members = sorted(key)
        _, ridges, _ = _int_hull(tuple(sorted({Y[j] for j in members})))
        poly = convex_hull([pts[j] for j in members])
        grad, const = h
        cells[key] = Cell(tuple(members), poly,
                          _embed([g * den for g in grad], pivots, n), const)
        for u, gamma, _ in ridges:
            m = -walk.functional(u, gamma)  # gamma - <u, Y>, negative beyond the ridge
            ridge = frozenset(j for j in members if m[j] == 0)
            if ridge in crossed or not (m < 0).any():
                continue  # already crossed, or on the boundary of the domain
            crossed.add(ridge)
            h2, contact2 = walk.tilt(h, m, u, gamma)
            key2 = frozenset(contact2)
            if key2 not in cells:
                queue.append((h2, key2))

    ordered = tuple(sorted(cells.values(), key=lambda c: c.indices))
    touching = set().union(*(set(c.indices) for c in ordered))
    return RoofFunction(
        points=pts,
        heights=tau,
        domain=domain,
        cells=ordered,
        on_roof=tuple(j in touching for j in range(count)),
    )


class _Walk:
    """Slacks ``h(Y_j) - tau_j`` of affine functions over integer points.

    Every slack is shadowed by a double-precision value with an error
    bound; exact LogValue arithmetic is only spent on the points that the
    floats cannot decide.
    """

    def __init__(self, Y, tau):
        self.Y = Y
        self.tau = tau
        count = len(Y)
        d = len(Y[0]) if Y else 0
        self.Yi = Y
        self.Yf = np.array(Y, dtype=float).reshape(count, d)
        self.Ya = np.abs(self.Yf)
        parts = [t.float_parts() for t in tau]
        self.tf = np.array([x for x, _ in parts])
        self.tm = np.array([e for _, e in parts])

    def functional(self, u, offset) -> np.ndarray:
        """Integer values ``<u, Y_j> - offset``."""
        return np.array([_idot(u, y) - offset for y in self.Y], dtype=object)

    def exact(self, h, j) -> LogValue:
        grad, const = h
        v = const - self.tau[j]
        for g, y in zip(grad, self.Y[j]):
            if y:
                v = v + g * y
        return v

    def shadow(self, h):
        grad, const = h
        gp = [g.float_parts() for g in grad]
        gf = np.array([x for x, _ in gp]).reshape(len(gp))
        gm = np.array([e for _, e in gp]).reshape(len(gp))
        cf, cm = const.float_parts()
        value = self.Yf @ gf + cf - self.tf
        err = FILTER_TOLERANCE * (self.Ya @ gm + cm + self.tm) + 1e-300
        if (value < -err).any():  # pragma: no cover - would mean a broken invariant
            raise AssertionError("negative slack in the envelope walk")
        return value, err

    def contact(self, h, shadow=None) -> list[int]:
        value, err = shadow if shadow is not None else self.shadow(h)
        near = np.nonzero(np.abs(value) <= err)[0]
        return [int(j) for j in near if self.exact(h, int(j)).is_zero()]

    def tilt(self, h, m, u, offset):
        """Move to ``h + mu * (offset - <u, Y>)`` with ``m_j`` the bracket at ``Y_j``.

        ``mu`` is the largest step keeping every slack nonnegative.
        """
        value, err = self.shadow(h)
        beyond = np.nonzero(m < 0)[0]
        scale = -m[beyond].astype(float)
        ratio = value[beyond] / scale
        rerr = err[beyond] / scale
        bar = (ratio + rerr).min()
        cand = beyond[ratio - rerr <= bar]
        mu = lv_min(self.exact(h, int(j)) / -int(m[j]) for j in cand)
        grad, const = h
        grad2 = tuple(g - mu * a if a else g for g, a in zip(grad, u))
        h2 = (grad2, const + mu * offset)
        return h2, self.contact(h2)


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    return len(int_pivots([sub(p, points[0]) for p in points[1:]], len(points[0])))


def _idot(u, p) -> int:
    return sum(a * b for a, b in zip(u, p))


def _embed(grad, pivots, n) -> tuple[LogValue, ...]:
    out = [ZERO] * n
    for g, c in zip(grad, pivots):
        out[c] = g
    return tuple(out)


def evaluate(f: RoofFunction, x, cell: int | None = None) -> LogValue:
    """Value of the roof at ``x``.

    With ``cell`` given, evaluates that cell's affine function extended to
    all of R^n; otherwise ``x`` must lie in the domain.
    """
    x = vec(x)
    if len(x) != f.ambient_dim:
        raise ValueError("point has the wrong dimension")
    if cell is not None:
        return f.cells[cell].value(x)
    if not f.domain.contains(x):
        raise ValueError(f"point {tuple(map(str, x))} lies outside the roof's domain")
    for c in f.cells:
        if c.polytope.contains(x):
            return c.value(x)
    raise AssertionError("cells do not cover the domain")  # pragma: no cover


def integrate(f: RoofFunction) -> LogValue:
    """Exact integral of the roof over its domain (Lebesgue measure on R^n)."""
    total = ZERO
    for c in f.cells:
        total = total + c.integral()
    return total


def sup_convolution(f: RoofFunction, g: RoofFunction) -> RoofFunction:
    """``x -> max{f(y) + g(z) : y + z = x}`` on the Minkowski sum of domains."""
    if f.ambient_dim != g.ambient_dim:
        raise ValueError("dimension mismatch in sup-convolution")
    return _sup_convolution(f, g)


@lru_cache(maxsize=512)
def _sup_convolution(f: RoofFunction, g: RoofFunction) -> RoofFunction:
    # roofs hash by identity, so repeated mixed integrals share work
    best: dict[Vector, LogValue] = {}
    for p, fp in f.graph_vertices():
        for q, gq in g.graph_vertices():
            x = add(p, q)
            v = fp + gq
            old = best.get(x)
            if old is None or v > old:
                best[x] = v
    pts = sorted(best)
    return upper_envelope(WeightedConfig(pts, [best[x] for x in pts]))


def mixed_integral(functions: Sequence[RoofFunction]) -> LogValue:
    """Inclusion-exclusion mixed integral of n+1 roofs on R^n."""
    fs = list(functions)
    if not fs:
        raise ValueError("mixed_integral needs n+1 roof functions")
    n = fs[0].ambient_dim
    if any(f.ambient_dim != n for f in fs):
        raise ValueError("dimension mismatch among roof functions")
    if len(fs) != n + 1:
        raise ValueError(f"mixed_integral on R^{n} needs {n + 1} functions, got {len(fs)}")

    # the sup-convolution of a subfamily only depends on its multiset
    slot = {}
    ids = [slot.setdefault(id(f), len(slot)) for f in fs]
    rep = {ids[i]: fs[i] for i in range(len(fs))}
    conv: dict[tuple[int, ...], RoofFunction] = {}
    ints: dict[tuple[int, ...], LogValue] = {}

    def convolve(key: tuple[int, ...]) -> RoofFunction:
        if key not in conv:
            conv[key] = rep[key[0]] if len(key) == 1 else \
                sup_convolution(convolve(key[:-1]), rep[key[-1]])
        return conv[key]

    total = ZERO
    for mask in range(1, 1 << len(fs)):
        key = tuple(sorted(ids[i] for i in range(len(fs)) if mask >> i & 1))
        if key not in ints:
            ints[key] = integrate(convolve(key))
        if (n + 1 - len(key)) % 2:
            total = total - ints[key]
        else:
            total = total + ints[key]
    return total


def verify_roof(f: RoofFunction) -> list[str]:
    """Check the structural invariants of a roof; returns failure messages."""
    problems = []
    if sum((c.polytope.volume for c in f.cells), Fraction(0)) != f.domain.volume:
        problems.append("cell volumes do not sum to the volume of the domain")
    for c in f.cells:
        if c.polytope.dim != f.domain.dim:
            problems.append(f"cell {c.indices} is not full-dimensional")
    for v, val in f.graph_vertices():
        for c in f.cells:
            if c.polytope.contains(v) and c.value(v) != val:
                problems.append(f"cells disagree at vertex {tuple(map(str, v))}")
    for i, (a, t) in enumerate(zip(f.points, f.heights)):
        theta = evaluate(f, a)
        if theta < t:
            problems.append(f"roof lies below lifted point {i}")
        if (theta == t) != f.on_roof[i]:
            problems.append(f"on-roof flag of point {i} is wrong")
    verts = [v for v, _ in f.graph_vertices()]
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            mid = tuple((a + b) / 2 for a, b in zip(verts[i], verts[j]))
            if evaluate(f, mid) < (evaluate(f, verts[i]) + evaluate(f, verts[j])) / 2:
                problems.append("concavity fails at a midpoint")
    return problems


def affine_heights(points, gradient, constant) -> list[LogValue]:
    """Heights ``<g, a_i> + c`` for LogValue gradient ``g`` and constant ``c``."""
    out = []
    for p in points:
        v = constant
        for g, x in zip(gradient, vec(p)):
            if x:
                v = v + g * x
        out.append(v)
    return out


def factorial_integral(f: RoofFunction) -> LogValue:
    """``(n+1)! * integral of f``."""
    return integrate(f) * factorial(f.ambient_dim + 1)
