"""Degree, Chow weight, normalized height and related invariants of toric varieties.

A projective toric variety ``X_{A,alpha}`` is described by a configuration
``A = (a_0, ..., a_N)`` of lattice points in Z^n and, for every place ``v``,
the weight vector ``tau_v = (log|alpha_i|_v)``.  All quantities below are
computed from the roofs of ``(A, tau_v)``:

* degree: ``n! Vol(Q_A)``;
* Chow weight: ``(n+1)! * integral of the roof``;
* normalized height: the sum of Chow weights over places, weighted by
  the local degrees;
* normalized multiheights: mixed integrals of the roofs of several blocks;
* intersections with monomial divisors ``div(x^b)``.

Unless ``normalized_mode`` is set, the differences of ``A`` must generate
Z^n.  In normalized mode volumes are measured with respect to the lattice
they generate instead.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

from .envelope import RoofFunction, integrate, mixed_integral, roof
from .lattice import LatticeData, lattice_data
from .logvalue import LogValue, lv_max, to_fraction
from .places import (Coordinate, PlaceWeights, place_sort_key,
                     product_formula_check, weights_from_point)
from .polytope import Polytope, convex_hull

__all__ = [
    "ToricError",
    "ProductFormulaError",
    "ToricInstance",
    "MultiInstance",
    "degree",
    "chow_weight",
    "normalized_height",
    "normalized_multiheight",
    "multiheight_terms",
    "monomial_bezout",
    "BezoutReport",
    "orbit_point_height",
    "minima_report",
    "MinimaReport",
    "translate_point",
]

ZERO = LogValue.zero()


class ToricError(ValueError):
    """The configuration violates a standing hypothesis."""


class ProductFormulaError(ValueError):
    """User-supplied weights do not satisfy the product formula."""


def _config(A) -> tuple[tuple[int, ...], ...]:
    out = []
    for a in A:
        row = []
        for x in a:
            fx = to_fraction(x)
            if fx.denominator != 1:
                raise ToricError(f"configuration point {tuple(a)} is not integral")
            row.append(int(fx))
        out.append(tuple(row))
    if not out:
        raise ToricError("empty configuration")
    if any(len(r) != len(out[0]) for r in out):
        raise ToricError("dimension mismatch among configuration points")
    return tuple(out)


def _lattice_factor(A, normalized_mode: bool, lat: LatticeData | None = None,
                    poly: Polytope | None = None) -> int:
    """Check the standing hypotheses; return the volume normalisation factor."""
    lat = lat or lattice_data(A)
    poly = poly or convex_hull(A)
    if not poly.is_full_dimensional:
        raise ToricError(
            f"Q_A has dimension {poly.dim} in R^{poly.ambient_dim}; it must be full-dimensional")
    if normalized_mode:
        return lat.index
    if not lat.is_standard:
        raise ToricError(
            f"the differences of A generate a lattice of {lat.describe()}; "
            "expected Z^n (enable normalized mode to renormalize)")
    return 1


@dataclass(frozen=True)
class ToricInstance:
    """A configuration ``A`` with the weights of a point ``alpha``."""

    configuration: tuple[tuple[int, ...], ...]
    weights: PlaceWeights
    normalized_mode: bool = False
    waive_product_formula: bool = False

    def __post_init__(self):
        object.__setattr__(self, "configuration", _config(self.configuration))
        if self.weights.size is not None and self.weights.size != len(self.configuration):
            raise ToricError(
                f"{len(self.configuration)} configuration points but weight "
                f"vectors of length {self.weights.size}")

    @classmethod
    def from_point(cls, A, alpha: Sequence, **options) -> ToricInstance:
        return cls(A, weights_from_point(alpha), **options)

    @property
    def n(self) -> int:
        return len(self.configuration[0])

    @property
    def N(self) -> int:
        return len(self.configuration) - 1

    @cached_property
    def lattice(self) -> LatticeData:
        return lattice_data(self.configuration)

    @cached_property
    def polytope(self) -> Polytope:
        return convex_hull(self.configuration)

    @cached_property
    def lattice_factor(self) -> int:
        return _lattice_factor(self.configuration, self.normalized_mode,
                               self.lattice, self.polytope)

    def roofs(self) -> list[tuple[object, Fraction, RoofFunction]]:
        """``(place, multiplicity, roof)`` for every nontrivial place."""
        return [(e.place, e.multiplicity, roof(self.configuration, e.tau))
                for e in self.weights]

    def check_product_formula(self) -> None:
        report = product_formula_check(self.weights)
        if report.passed:
            return
        sums = ", ".join(map(str, report.sums))
        if not self.waive_product_formula:
            raise ProductFormulaError(
                f"weights fail the product formula (sums: {sums}); "
                "waive the check to compute anyway")
        warnings.warn(f"product formula fails (sums: {sums}); results are not heights",
                      stacklevel=3)


def degree(inst: ToricInstance) -> int:
    """``n! Vol(Q_A)``, measured in the lattice generated by ``A``."""
    value = factorial(inst.n) * inst.polytope.volume / inst.lattice_factor
    assert value.denominator == 1
    return int(value)


def chow_weight(A, tau: Sequence[LogValue], normalized_mode: bool = False) -> LogValue:
    """Chow weight ``(n+1)! * integral of the roof of (A, tau)``."""
    A = _config(A)
    factor = _lattice_factor(A, normalized_mode)
    if len(tau) != len(A):
        raise ToricError(f"{len(A)} configuration points but {len(tau)} weights")
    f = roof(A, tau)
    return _roof_weight(f, len(A[0]), factor)


def _roof_weight(f: RoofFunction, n: int, factor: int) -> LogValue:
    return integrate(f) * Fraction(factorial(n + 1), factor)


def normalized_height(inst: ToricInstance) -> LogValue:
    """Sum over places of ``lambda_v * chow_weight(A, tau_v)``."""
    inst.check_product_formula()
    factor = inst.lattice_factor
    total = ZERO
    for _, mult, f in inst.roofs():
        total = total + _roof_weight(f, inst.n, factor) * mult
    return total


def chow_weights(inst: ToricInstance) -> list[tuple[object, Fraction, LogValue]]:
    factor = inst.lattice_factor
    return [(place, mult, _roof_weight(f, inst.n, factor))
            for place, mult, f in inst.roofs()]


@dataclass(frozen=True)
class MultiInstance:
    """Several configurations in a common Z^n with an index vector ``c``."""

    blocks: tuple[ToricInstance, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        c = tuple(int(x) for x in self.c)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "c", c)
        if not blocks:
            raise ToricError("a multiprojective instance needs at least one block")
        n = blocks[0].n
        if any(b.n != n for b in blocks):
            raise ToricError("blocks live in different dimensions")
        if len(c) != len(blocks):
            raise ToricError(f"index vector has {len(c)} entries for {len(blocks)} blocks")
        if sum(c) != n + 1:
            raise ToricError(f"index entries must sum to n+1 = {n + 1}, got {sum(c)}")
        for i, (ci, b) in enumerate(zip(c, blocks)):
            if not 0 <= ci <= b.N:
                raise ToricError(f"index entry c_{i} = {ci} must lie in [0, {b.N}]")
        joint = [tuple(x - y for x, y in zip(a, b.configuration[0]))
                 for b in blocks for a in b.configuration]
        lat = lattice_data([(0,) * n] + joint)
        if not lat.is_standard:
            raise ToricError(
                f"the blocks jointly generate a lattice of {lat.describe()}; expected Z^n")

    @property
    def n(self) -> int:
        return self.blocks[0].n

    def places(self) -> list[tuple[object, Fraction]]:
        mults: dict = {}
        for b in self.blocks:
            for e in b.weights:
                if mults.setdefault(e.place, e.multiplicity) != e.multiplicity:
                    raise ToricError(f"blocks disagree on the multiplicity of place {e.place}")
        return sorted(mults.items(), key=lambda kv: place_sort_key(kv[0]))


def multiheight_terms(inst: MultiInstance) -> list[tuple[object, Fraction, LogValue]]:
    """Per place: the mixed integral of the roofs, block ``i`` repeated ``c_i`` times."""
    for b in inst.blocks:
        b.check_product_formula()
    out = []
    for place, mult in inst.places():
        fs = []
        for b, ci in zip(inst.blocks, inst.c):
            if ci == 0:
                continue
            e = b.weights.get(place)
            tau = e.tau if e is not None else [ZERO] * len(b.configuration)
            f = roof(b.configuration, tau)
            fs.extend([f] * ci)
        out.append((place, mult, mixed_integral(fs)))
    return out


def normalized_multiheight(inst: MultiInstance) -> LogValue:
    total = ZERO
    for _, mult, mi in multiheight_terms(inst):
        total = total + mi * mult
    return total


@dataclass(frozen=True)
class BezoutCell:
    indices: tuple[int, ...]
    polytope: Polytope
    volume: Fraction
    value_at_a: LogValue
    lattice_index: int | None

    @property
    def contribution(self) -> LogValue:
        return self.value_at_a * self.volume


@dataclass(frozen=True)
class BezoutPlace:
    place: object
    multiplicity: Fraction
    cells: tuple[BezoutCell, ...]

    @property
    def total(self) -> LogValue:
        s = ZERO
        for c in self.cells:
            s = s + c.contribution
        return s


@dataclass(frozen=True)
class BezoutReport:
    height: LogValue
    D: int
    a: tuple[int, ...]
    base_height: LogValue
    places: tuple[BezoutPlace, ...]
    effective: bool
    inequality_holds: bool | None = field(default=None)


def monomial_bezout(inst: ToricInstance, b: Sequence[int]) -> BezoutReport:
    """Normalized height of ``X_{A,alpha} . div(x^b)``.

    Each cell's affine function is evaluated at ``(D, a)`` homogeneously,
    i.e. as ``<g_S, a> + D c_S``, which is the sum over ``i`` of ``b_i``
    times its value at ``a_i``.
    """
    b = tuple(int(x) for x in b)
    if len(b) != len(inst.configuration):
        raise ToricError(f"exponent vector has {len(b)} entries, expected {len(inst.configuration)}")
    A = inst.configuration
    n = inst.n
    D = sum(b)
    a = tuple(sum(bi * ai[k] for bi, ai in zip(b, A)) for k in range(n))
    base = normalized_height(inst)
    factor = inst.lattice_factor

    places = []
    correction = ZERO
    for place, mult, f in inst.roofs():
        cells = []
        for c in f.cells:
            val = c.constant * D
            for g, x in zip(c.gradient, a):
                if x:
                    val = val + g * x
            inside = [p for p in A if c.polytope.contains(p)]
            cells.append(BezoutCell(c.indices, c.polytope, c.polytope.volume / factor,
                                    val, lattice_data(inside).index))
        bp = BezoutPlace(place, mult, tuple(cells))
        places.append(bp)
        correction = correction + bp.total * mult

    height = base * D - correction * factorial(n)
    effective = all(x >= 0 for x in b)
    return BezoutReport(
        height=height,
        D=D,
        a=a,
        base_height=base,
        places=tuple(places),
        effective=effective,
        inequality_holds=(height <= base * D) if effective else None,
    )


def orbit_point_height(inst: ToricInstance, t: Sequence) -> LogValue:
    """Weil height of the orbit point ``(t^{a_i} alpha_i)_i``."""
    t = [to_fraction(x) for x in t]
    if len(t) != inst.n:
        raise ToricError(f"torus point must have {inst.n} coordinates")
    if any(x == 0 for x in t):
        raise ToricError("torus point has a zero entry")
    tw = weights_from_point(t)
    mults = {e.place: e.multiplicity for e in inst.weights}
    places = set(mults) | set(tw.places)
    total = ZERO
    for place in sorted(places, key=place_sort_key):
        e = inst.weights.get(place)
        tau = e.tau if e is not None else [ZERO] * len(inst.configuration)
        te = tw.get(place)
        sigma = te.tau if te is not None else [ZERO] * inst.n
        vals = []
        for ai, ti in zip(inst.configuration, tau):
            v = ti
            for s, x in zip(sigma, ai):
                if x:
                    v = v + s * x
            vals.append(v)
        total = total + lv_max(vals) * mults.get(place, Fraction(1))
    return total


@dataclass(frozen=True)
class MinimaReport:
    height: LogValue
    degree: int
    height_over_degree: LogValue
    samples: tuple[tuple[Fraction, ...], ...]
    sample_heights: tuple[LogValue, ...]
    minimum: LogValue | None
    essential_minimum_lower_bound: LogValue
    minima_sum_upper_bound: LogValue


def minima_report(inst: ToricInstance, samples: Sequence[Sequence]) -> MinimaReport:
    """Juxtapose ``h/deg`` with heights of sampled orbit points.

    The bounds are the ones a successive-minima inequality would give
    (``mu_1 >= (h/deg)/(n+1)`` and ``mu_1 + ... + mu_{n+1} <= h/deg``); they
    are reported for context and never checked against the samples.
    """
    h = normalized_height(inst)
    deg = degree(inst)
    ratio = h / deg
    pts = tuple(tuple(to_fraction(x) for x in s) for s in samples)
    heights = tuple(orbit_point_height(inst, s) for s in pts)
    return MinimaReport(
        height=h,
        degree=deg,
        height_over_degree=ratio,
        samples=pts,
        sample_heights=heights,
        minimum=min(heights) if heights else None,
        essential_minimum_lower_bound=ratio / (inst.n + 1),
        minima_sum_upper_bound=ratio,
    )


def translate_point(A, alpha: Sequence, s: Sequence) -> list:
    """The point ``(s^{a_i} alpha_i)_i`` of the same orbit."""
    s = [to_fraction(x) for x in s]
    out = []
    for a, x in zip(A, alpha):
        k = Fraction(1)
        for si, ei in zip(s, a):
            k *= si ** int(ei)
        if isinstance(x, Coordinate):
            out.append(Coordinate(x.q * k, x.base, x.exponent))
        else:
            out.append(to_fraction(x) * k)
    return out
