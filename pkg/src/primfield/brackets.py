"""Certified scalar brackets with exact rational endpoints.

Anything that cannot be held as an exact rational (logs, Gamma, e^gamma)
is carried as a closed interval [lo, hi] guaranteed to contain the true
value.  Transcendental steps run in mpmath's outward-rounded interval
context; endpoints come back as dyadic rationals, so every downstream
comparison is exact integer arithmetic.  Interval-on-interval arithmetic
done here in Fractions needs no rounding at all.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from mpmath import iv

from .errors import PrecisionError, UsageError

Rational = Union[int, Fraction]

DEFAULT_PRECISION_BITS = 128
MAX_PRECISION_BITS = 4096


@contextmanager
def precision(bits: int) -> Iterator[None]:
    """Temporarily set the interval working precision."""
    if not 8 <= bits <= MAX_PRECISION_BITS:
        raise PrecisionError(f"precision {bits} outside [8, {MAX_PRECISION_BITS}]")
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def _endpoint_fraction(t) -> Fraction:
    """Exact value of a libmp endpoint tuple (sign, man, exp, bc)."""
    sign, man, exp, _bc = t
    man = int(man)
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise OverflowError("non-finite interval endpoint")
    exp = int(exp)
    if abs(exp) > 2**24:
        # starved precision can emit wild exponents; surface that rather
        # than materialize a denominator with 2^24-plus bits
        raise PrecisionError(f"interval endpoint exponent {exp} out of range")
    if exp >= 0:
        f = Fraction(man << exp)
    else:
        f = Fraction(man, 1 << -exp)
    return -f if sign else f


def iv_to_fractions(x) -> tuple[Fraction, Fraction]:
    """Exact (lo, hi) of an mpmath interval scalar."""
    lo_t, hi_t = x._mpi_
    return _endpoint_fraction(lo_t), _endpoint_fraction(hi_t)


def iv_from_fraction(fr: Rational):
    """Interval guaranteed to contain the rational fr (outward division)."""
    fr = Fraction(fr)
    return iv.mpf(fr.numerator) / fr.denominator


def iv_span(lo: Rational, hi: Rational):
    """Interval containing all of [lo, hi] (hull of two rationals)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise UsageError("span endpoints out of order")
    a = iv_from_fraction(lo)
    b = iv_from_fraction(hi)
    return iv.mpf([a.a, b.b])


def iv_pointwise_max(x, y):
    """Interval image of max over two intervals: [max lo, max hi]."""
    return iv.mpf([max(x.a, y.a), max(x.b, y.b)])


@dataclass(frozen=True)
class BracketedValue:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not (isinstance(self.lo, Fraction) and isinstance(self.hi, Fraction)):
            object.__setattr__(self, "lo", Fraction(self.lo))
            object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise UsageError(f"bracket endpoints out of order: {self.lo} > {self.hi}")

    # ---- construction -------------------------------------------------

    @classmethod
    def from_iv(cls, x) -> "BracketedValue":
        lo, hi = iv_to_fractions(x)
        return cls(lo, hi)

    @classmethod
    def exactly(cls, value: Rational) -> "BracketedValue":
        v = Fraction(value)
        return cls(v, v)

    # ---- queries ------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: Rational) -> bool:
        v = Fraction(value)
        return self.lo <= v <= self.hi

    def contains_bracket(self, other: "BracketedValue") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def strictly_below(self, other: "BracketedValue | Rational") -> bool:
        """True only if every point of self is below every point of other."""
        if isinstance(other, BracketedValue):
            return self.hi < other.lo
        return self.hi < Fraction(other)

    def strictly_above(self, other: "BracketedValue | Rational") -> bool:
        if isinstance(other, BracketedValue):
            return self.lo > other.hi
        return self.lo > Fraction(other)

    # ---- exact interval arithmetic ------------------------------------

    def __add__(self, other: "BracketedValue | Rational") -> "BracketedValue":
        if isinstance(other, BracketedValue):
            return BracketedValue(self.lo + other.lo, self.hi + other.hi)
        o = Fraction(other)
        return BracketedValue(self.lo + o, self.hi + o)

    __radd__ = __add__

    def __neg__(self) -> "BracketedValue":
        return BracketedValue(-self.hi, -self.lo)

    def __sub__(self, other: "BracketedValue | Rational") -> "BracketedValue":
        if isinstance(other, BracketedValue):
            return self + (-other)
        return self + (-Fraction(other))

    def __rsub__(self, other: Rational) -> "BracketedValue":
        return (-self) + Fraction(other)

    def __mul__(self, other: "BracketedValue | Rational") -> "BracketedValue":
        if isinstance(other, BracketedValue):
            cands = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return BracketedValue(min(cands), max(cands))
        o = Fraction(other)
        if o >= 0:
            return BracketedValue(self.lo * o, self.hi * o)
        return BracketedValue(self.hi * o, self.lo * o)

    __rmul__ = __mul__

    def __abs__(self) -> "BracketedValue":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return BracketedValue(Fraction(0), max(-self.lo, self.hi))

    # ---- serialization ------------------------------------------------

    def to_json(self, digits: int = 36) -> dict:
        return {
            "lo": fraction_to_decimal(self.lo, digits, "floor"),
            "hi": fraction_to_decimal(self.hi, digits, "ceil"),
        }

    def __str__(self) -> str:
        d = self.to_json(digits=24)
        return f"[{d['lo']}, {d['hi']}]"


def fraction_to_decimal(fr: Rational, digits: int, direction: str) -> str:
    """Decimal string with `digits` fractional places, rounded outward.

    direction 'floor' rounds toward -inf, 'ceil' toward +inf, so printing
    a bracket with (floor, ceil) never narrows it.
    """
    fr = Fraction(fr)
    if digits < 0:
        raise UsageError("digits must be >= 0")
    scaled = fr * 10**digits
    if direction == "floor":
        n = scaled.numerator // scaled.denominator
    elif direction == "ceil":
        n = -((-scaled.numerator) // scaled.denominator)
    else:
        raise UsageError(f"unknown rounding direction {direction!r}")
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def euler_gamma_bracket(precision_bits: int = DEFAULT_PRECISION_BITS) -> BracketedValue:
    """Certified bracket for the Euler-Mascheroni constant."""
    with precision(precision_bits):
        return BracketedValue.from_iv(+iv.euler)
