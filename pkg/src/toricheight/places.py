"""Places of the rationals and the weight vectors they induce on a point.

For a point ``alpha = (alpha_0, ..., alpha_N)`` with nonzero coordinates and
a place ``v`` the weight vector is ``tau_v = (log|alpha_i|_v)_i``, with
``|p|_p = 1/p`` and the usual archimedean absolute value.  Coordinates may
be radicals ``q * r**e`` sharing a single base ``r``; over ``Q(r**(1/l))``
all places above one rational place then contribute identically, so the
rational places with multiplicity 1 suffice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from sympy import factorint

from .logvalue import LogValue, to_fraction

__all__ = [
    "INF",
    "Coordinate",
    "PlaceEntry",
    "PlaceWeights",
    "ProductFormulaReport",
    "weights_from_point",
    "product_formula_check",
    "valuation",
    "place_sort_key",
    "parse_place",
    "scale_point",
]

INF = "inf"
Place = Union[int, str]
ZERO = LogValue.zero()


def place_sort_key(place: Place):
    return (1, 0) if place == INF else (0, int(place))


def parse_place(text) -> Place:
    if isinstance(text, int) and not isinstance(text, bool):
        place = text
    else:
        s = str(text).strip().lower()
        if s in ("inf", "infinity", "oo", "∞"):
            return INF
        place = int(s)
    if place < 2 or list(factorint(place).values()) != [1]:
        raise ValueError(f"place {text!r} is neither a prime nor 'inf'")
    return place


def valuation(x: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class Coordinate:
    """The algebraic number ``q * base**exponent`` (real positive root)."""

    q: Fraction
    base: Fraction = Fraction(1)
    exponent: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "q", to_fraction(self.q))
        object.__setattr__(self, "base", to_fraction(self.base))
        object.__setattr__(self, "exponent", to_fraction(self.exponent))
        if self.q == 0:
            raise ValueError("zero coordinate")
        if self.base <= 0:
            raise ValueError("radical base must be a positive rational")
        if self.base == 1 or self.exponent == 0:
            object.__setattr__(self, "base", Fraction(1))
            object.__setattr__(self, "exponent", Fraction(0))

    def primes(self) -> set[int]:
        out = set()
        for k in (self.q.numerator, self.q.denominator,
                  self.base.numerator, self.base.denominator):
            out.update(factorint(abs(k)))
        return out

    def log_abs(self, place: Place) -> LogValue:
        """``log|x|_v`` as an exact LogValue."""
        if place == INF:
            return LogValue.log(self.q) + LogValue.log(self.base) * self.exponent
        p = int(place)
        v = valuation(self.q, p) + self.exponent * valuation(self.base, p)
        return LogValue({p: -v}) if v else ZERO

    def __str__(self):
        if self.base == 1 or self.exponent == 0:
            return str(self.q)
        return f"{self.q}*{self.base}^({self.exponent})"


@dataclass(frozen=True)
class PlaceEntry:
    place: Place
    multiplicity: Fraction
    tau: tuple[LogValue, ...]


@dataclass(frozen=True)
class PlaceWeights:
    """Per-place weight vectors with their multiplicities ``[K_v:Q_v]/[K:Q]``."""

    entries: tuple[PlaceEntry, ...] = field(default=())
    size: int | None = None

    def __post_init__(self):
        seen = set()
        for e in self.entries:
            if e.place in seen:
                raise ValueError(f"place {e.place} listed twice")
            seen.add(e.place)
            if e.multiplicity <= 0:
                raise ValueError(f"multiplicity of place {e.place} must be positive")
            if self.size is not None and len(e.tau) != self.size:
                raise ValueError(
                    f"weight vector at place {e.place} has {len(e.tau)} entries, "
                    f"expected {self.size}")
        sizes = {len(e.tau) for e in self.entries}
        if len(sizes) > 1:
            raise ValueError("weight vectors of different lengths")
        if self.size is None and sizes:
            object.__setattr__(self, "size", sizes.pop())

    @classmethod
    def build(cls, entries, size: int | None = None) -> PlaceWeights:
        """Normalize raw ``(place, multiplicity, tau)`` triples; drops trivial places."""
        out = []
        for place, mult, tau in entries:
            tau = tuple(t if isinstance(t, LogValue) else LogValue.from_json(t) for t in tau)
            if all(t.is_zero() for t in tau):
                continue
            out.append(PlaceEntry(parse_place(place), to_fraction(mult), tau))
        out.sort(key=lambda e: place_sort_key(e.place))
        return cls(tuple(out), size)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def places(self) -> tuple[Place, ...]:
        return tuple(e.place for e in self.entries)

    def get(self, place: Place) -> PlaceEntry | None:
        return next((e for e in self.entries if e.place == place), None)


@dataclass(frozen=True)
class ProductFormulaReport:
    sums: tuple[LogValue, ...]
    passed: bool


def weights_from_point(coords: Sequence) -> PlaceWeights:
    """Weight vectors ``tau_v`` of a point, one per nontrivial place.

    Rational entries may be given directly; radicals as :class:`Coordinate`.
    """
    cs = [c if isinstance(c, Coordinate) else Coordinate(to_fraction(c)) for c in coords]
    if not cs:
        raise ValueError("a point needs at least one coordinate")
    bases = {c.base for c in cs if c.base != 1 and c.exponent != 0}
    if len(bases) > 1:
        raise ValueError("mixed radical bases: coordinates must share one base")
    primes = sorted(set().union(*(c.primes() for c in cs)))
    entries = [(p, 1, [c.log_abs(p) for c in cs]) for p in primes]
    entries.append((INF, 1, [c.log_abs(INF) for c in cs]))
    return PlaceWeights.build(entries, size=len(cs))


def product_formula_check(w: PlaceWeights) -> ProductFormulaReport:
    """Per-coordinate sums ``sum_v lambda_v tau_{i,v}``; passes iff all vanish."""
    size = w.size or 0
    sums = [ZERO] * size
    for e in w.entries:
        for i, t in enumerate(e.tau):
            sums[i] = sums[i] + t * e.multiplicity
    return ProductFormulaReport(tuple(sums), all(s.is_zero() for s in sums))


def scale_point(coords: Sequence, k) -> list:
    """Multiply every coordinate by the nonzero rational ``k``."""
    k = to_fraction(k)
    out = []
    for c in coords:
        if isinstance(c, Coordinate):
            out.append(Coordinate(c.q * k, c.base, c.exponent))
        else:
            out.append(to_fraction(c) * k)
    return out
