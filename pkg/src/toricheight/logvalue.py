"""Exact elements of the rational span of ``{log p : p prime}``.

A :class:`LogValue` stores a finite map ``p -> q_p`` and represents the real
number ``sum(q_p * log(p))``.  Since the logarithms of distinct primes are
linearly independent over the rationals, two values are equal exactly when
their maps agree, and a nonzero map always has a decidable sign.  The sign is
found with interval arithmetic, doubling the working precision until the
enclosure excludes zero.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
import threading
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

import mpmath
from mpmath import iv
from sympy import factorint

__all__ = [
    "LogValue",
    "PrecisionExhausted",
    "DEFAULT_PRECISION_CAP",
    "precision_cap",
    "get_precision_cap",
    "to_fraction",
]

DEFAULT_PRECISION_CAP = 16384
_START_PRECISION = 64

_cap: contextvars.ContextVar[int] = contextvars.ContextVar(
    "toricheight_precision_cap", default=DEFAULT_PRECISION_CAP
)
# mpmath's interval context keeps its precision in global state
_iv_lock = threading.Lock()


class PrecisionExhausted(ArithmeticError):
    """Sign determination hit the precision cap without separating from zero."""


def get_precision_cap() -> int:
    return _cap.get()


@contextlib.contextmanager
def precision_cap(bits: int) -> Iterator[None]:
    """Temporarily set the bit cap used by sign determination."""
    if bits < _START_PRECISION:
        raise ValueError(f"precision cap must be at least {_START_PRECISION} bits")
    token = _cap.set(int(bits))
    try:
        yield
    finally:
        _cap.reset(token)


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _factor(k: int) -> dict[int, int]:
    return {int(p): int(e) for p, e in factorint(k).items()}


class LogValue:
    """Exact value ``sum(q_p * log p)`` with rational ``q_p``.

    Instances are immutable and hashable.  Arithmetic is closed under
    addition, negation and multiplication or division by rationals; the
    product of two LogValues is not represented.

    >>> two_log2 = 2 * LogValue.log(2)
    >>> str(two_log2)
    '2*log(2)'
    >>> LogValue.log(6) == LogValue.log(2) + LogValue.log(3)
    True
    """

    __slots__ = ("_coeffs", "_hash", "_sign", "_float")

    def __init__(self, coefficients: Mapping[int, object] | None = None):
        coeffs: dict[int, Fraction] = {}
        if coefficients:
            for base, q in coefficients.items():
                base = int(base)
                q = to_fraction(q)
                if base < 1:
                    raise ValueError(f"log of non-positive integer {base}")
                if q == 0 or base == 1:
                    continue
                for p, e in _factor(base).items():
                    coeffs[p] = coeffs.get(p, Fraction(0)) + e * q
        self._coeffs = {p: coeffs[p] for p in sorted(coeffs) if coeffs[p] != 0}
        self._hash = None
        self._sign = None
        self._float = None

    @classmethod
    def _raw(cls, coeffs: dict[int, Fraction]) -> LogValue:
        # trusted constructor: keys are primes, values nonzero
        obj = cls.__new__(cls)
        obj._coeffs = coeffs
        obj._hash = None
        obj._sign = None
        obj._float = None
        return obj

    @classmethod
    def zero(cls) -> LogValue:
        return _ZERO

    @classmethod
    def log(cls, r) -> LogValue:
        """``log|r|`` for a nonzero rational ``r``."""
        r = to_fraction(r)
        if r == 0:
            raise ValueError("log of zero")
        r = abs(r)
        coeffs: dict[int, Fraction] = {}
        for p, e in _factor(r.numerator).items():
            coeffs[p] = Fraction(e)
        for p, e in _factor(r.denominator).items():
            coeffs[p] = coeffs.get(p, Fraction(0)) - e
        return cls(coeffs)

    @property
    def coefficients(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LogValue):
            if other == 0:
                return self
            return NotImplemented
        if not other._coeffs:
            return self
        if not self._coeffs:
            return other
        out = dict(self._coeffs)
        for p, q in other._coeffs.items():
            s = out.get(p)
            if s is None:
                out[p] = q
            else:
                s += q
                if s:
                    out[p] = s
                else:
                    del out[p]
        if len(out) > 1:
            out = {p: out[p] for p in sorted(out)}
        return LogValue._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LogValue._raw({p: -q for p, q in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, LogValue):
            if other == 0:
                return self
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if other == 0:
            return -self
        return NotImplemented

    def __mul__(self, k):
        if isinstance(k, LogValue):
            return NotImplemented
        if isinstance(k, float):
            raise TypeError("LogValue scalars must be exact rationals")
        k = to_fraction(k)
        if k == 0 or not self._coeffs:
            return _ZERO
        if k == 1:
            return self
        return LogValue._raw({p: q * k for p, q in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, (LogValue, float)):
            return NotImplemented
        k = to_fraction(k)
        if k == 0:
            raise ZeroDivisionError("LogValue division by zero")
        return self * (1 / k)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LogValue):
            return self._coeffs == other._coeffs
        if other == 0:
            return not self._coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def sign(self) -> int:
        """Return -1, 0 or 1.  Raises :class:`PrecisionExhausted` past the cap."""
        if self._sign is None:
            self._sign = _sign(self._coeffs, get_precision_cap())
        return self._sign

    def sign_at(self, start_bits: int, cap_bits: int | None = None) -> int:
        """Sign determination starting from a given working precision."""
        cap = get_precision_cap() if cap_bits is None else cap_bits
        return _sign(self._coeffs, cap, start_bits, use_fast_path=False)

    def _cmp(self, other) -> int:
        if isinstance(other, LogValue):
            return (self - other).sign()
        if other == 0:
            return self.sign()
        raise TypeError(f"cannot compare LogValue with {type(other).__name__}")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self._coeffs)

    # -- display ----------------------------------------------------------

    def __float__(self):
        return self.float_parts()[0]

    def float_parts(self) -> tuple[float, float]:
        """Double-precision value and the sum of the absolute values of its terms.

        The value is within a few ulps of the second number of the truth,
        which lets callers skip exact comparisons that floats already decide.
        """
        if self._float is None:
            try:
                terms = [float(q) * _LOG[p] if p in _LOG else float(q) * math.log(p)
                         for p, q in self._coeffs.items()]
                self._float = (math.fsum(terms), math.fsum(abs(t) for t in terms))
            except OverflowError:
                # coefficients beyond double range: no usable estimate
                self._float = (0.0, 1e300)
        return self._float

    def approx(self, digits: int = 10) -> str:
        """Decimal approximation rounded to ``digits`` places after the point."""
        size = max((len(str(q.numerator)) for q in self._coeffs.values()), default=0)
        with mpmath.workdps(digits + 20 + size):
            x = mpmath.fsum(mpmath.mpf(q.numerator) / q.denominator * mpmath.log(p)
                            for p, q in self._coeffs.items())
            return _fixed(x, digits)

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for p, q in self._coeffs.items():
            mag = abs(q)
            term = f"log({p})" if mag == 1 else f"{mag}*log({p})"
            if not parts:
                parts.append(term if q > 0 else "-" + term)
            else:
                parts.append(("+ " if q > 0 else "- ") + term)
        return " ".join(parts)

    def __repr__(self):
        return f"LogValue({{{', '.join(f'{p}: {q!s}' for p, q in self._coeffs.items())}}})"

    def to_json(self) -> dict[str, str]:
        return {str(p): str(q) for p, q in self._coeffs.items()}

    @classmethod
    def from_json(cls, data) -> LogValue:
        """Accept ``{"2": "1/3"}`` maps or symbolic strings like ``"2*log(2) - log(3)"``."""
        if isinstance(data, Mapping):
            return cls({int(k): to_fraction(v) for k, v in data.items()})
        if isinstance(data, str):
            return parse_logvalue(data)
        if isinstance(data, int) and data == 0:
            return _ZERO
        raise TypeError(f"cannot read a LogValue from {data!r}")


_ZERO = LogValue._raw({})
_LOG = {p: math.log(p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)}


def _fixed(x, digits: int) -> str:
    # round half away from zero at ``digits`` decimals, exact in the mpf domain
    scaled = mpmath.nint(x * mpmath.mpf(10) ** digits)
    n = int(scaled)
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def _float_sign(coeffs: dict[int, Fraction]) -> int:
    """Sign from double precision when the margin dwarfs rounding error, else 0."""
    try:
        terms = [float(q) * math.log(p) for p, q in coeffs.items()]
    except OverflowError:
        return 0
    total = math.fsum(terms)
    bound = 1e-12 * sum(abs(t) for t in terms)
    if not math.isfinite(total) or abs(total) <= bound:
        return 0
    return 1 if total > 0 else -1


def _sign(coeffs: dict[int, Fraction], cap: int, start: int = _START_PRECISION,
          use_fast_path: bool = True) -> int:
    if not coeffs:
        return 0
    if use_fast_path:
        signs = {q > 0 for q in coeffs.values()}
        if len(signs) == 1:
            return 1 if signs.pop() else -1
        quick = _float_sign(coeffs)
        if quick:
            return quick
    prec = start
    with _iv_lock:
        saved = iv.prec
        try:
            while prec <= cap:
                iv.prec = prec
                total = iv.mpf(0)
                for p, q in coeffs.items():
                    total += iv.mpf(q.numerator) / q.denominator * iv.log(p)
                if total.a > 0:
                    return 1
                if total.b < 0:
                    return -1
                prec *= 2
        finally:
            iv.prec = saved
    raise PrecisionExhausted(
        f"sign of {LogValue._raw(coeffs)} undecided at {cap} bits")


# relative error budget for float filtering; double rounding is ~1e-16
FILTER_TOLERANCE = 1e-10


def _candidates(vals: list[LogValue], sign: int) -> list[LogValue]:
    # values that floats cannot rule out as the extremum (max for sign 1)
    parts = [v.float_parts() for v in vals]
    errs = [FILTER_TOLERANCE * m for _, m in parts]
    bar = max(sign * x - e for (x, _), e in zip(parts, errs))
    return [v for v, (x, _), e in zip(vals, parts, errs) if sign * x + e >= bar]


def lv_max(values: Iterable[LogValue]) -> LogValue:
    vals = list(values)
    if len(vals) > 3:
        vals = _candidates(vals, 1)
    best = vals[0]
    for v in vals[1:]:
        if v > best:
            best = v
    return best


def lv_min(values: Iterable[LogValue]) -> LogValue:
    vals = list(values)
    if len(vals) > 3:
        vals = _candidates(vals, -1)
    best = vals[0]
    for v in vals[1:]:
        if v < best:
            best = v
    return best


def parse_logvalue(text: str) -> LogValue:
    """Parse sums of terms ``[coef*]log(k)`` such as ``"2*log(2) - 1/3*log(5)"``."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return _ZERO
    total = _ZERO
    i = 0
    while i < len(s):
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
        j = s.find("log(", i)
        if j < 0:
            raise ValueError(f"malformed LogValue literal {text!r}")
        coef_text = s[i:j]
        if coef_text.endswith("*"):
            coef_text = coef_text[:-1]
        coef = Fraction(1) if coef_text == "" else Fraction(coef_text)
        k = s.find(")", j)
        if k < 0:
            raise ValueError(f"malformed LogValue literal {text!r}")
        arg = Fraction(s[j + 4:k])
        total = total + LogValue.log(arg) * (sign * coef)
        i = k + 1
        if i < len(s) and s[i] not in "+-":
            raise ValueError(f"malformed LogValue literal {text!r}")
    return total
