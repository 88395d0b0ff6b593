"""Directed-rounding interval arithmetic with exact rational endpoints.

Field operations on rational endpoints are exact, so rounding only enters
through roots, rational powers, and base-2 logarithms; those round outward
at a caller-chosen precision (bits of the result's dyadic denominator).
Every inequality certified through this module therefore holds for the real
numbers enclosed, not merely for their approximations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, TypeVar

import gmpy2

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_BITS = 128
MAX_BITS = 1 << 14


class PrecisionError(Exception):
    """A comparison stayed inconclusive at the maximum working precision."""


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval: [{self.lo}, {self.hi}]")

    @staticmethod
    def exact(x: Fraction | int) -> Interval:
        x = Fraction(x)
        return Interval(x, x)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other: Interval | Fraction | int) -> Interval:
        other = _coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: Interval | Fraction | int) -> Interval:
        return self + (-_coerce(other))

    def __rsub__(self, other: Fraction | int) -> Interval:
        return _coerce(other) - self

    def __mul__(self, other: Interval | Fraction | int) -> Interval:
        other = _coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: Interval | Fraction | int) -> Interval:
        other = _coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        quotients = (self.lo / other.lo, self.lo / other.hi,
                     self.hi / other.lo, self.hi / other.hi)
        return Interval(min(quotients), max(quotients))

    def square(self) -> Interval:
        if self.lo >= 0:
            return Interval(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return Interval(self.hi * self.hi, self.lo * self.lo)
        return Interval(ZERO, max(self.lo * self.lo, self.hi * self.hi))

    def union(self, other: Interval) -> Interval:
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersects(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def contains(self, x: Fraction | int) -> bool:
        return self.lo <= x <= self.hi

    # Certified comparisons: True means the relation holds for every pair of
    # enclosed reals; False means it is indeterminate or fails.
    def certainly_le(self, other: Interval | Fraction | int) -> bool:
        return self.hi <= _coerce(other).lo

    def certainly_lt(self, other: Interval | Fraction | int) -> bool:
        return self.hi < _coerce(other).lo

    def certainly_ge(self, other: Interval | Fraction | int) -> bool:
        return self.lo >= _coerce(other).hi

    def certainly_gt(self, other: Interval | Fraction | int) -> bool:
        return self.lo > _coerce(other).hi

    def rounded(self, bits: int) -> Interval:
        """Outward dyadic rounding; controls endpoint size in long loops."""
        scale = 1 << bits
        lo = Fraction(_floor_div(self.lo.numerator * scale, self.lo.denominator), scale)
        hi = Fraction(-_floor_div(-self.hi.numerator * scale, self.hi.denominator), scale)
        return Interval(lo, hi)

    def to_json(self) -> dict:
        return {
            "lo": [str(self.lo.numerator), str(self.lo.denominator)],
            "hi": [str(self.hi.numerator), str(self.hi.denominator)],
            "rounding": "outward",
        }

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"


def _coerce(x: Interval | Fraction | int) -> Interval:
    return x if isinstance(x, Interval) else Interval.exact(x)


def _floor_div(a: int, b: int) -> int:
    return a // b


def interval_max(a: Interval, b: Interval) -> Interval:
    return Interval(max(a.lo, b.lo), max(a.hi, b.hi))


def interval_min(a: Interval, b: Interval) -> Interval:
    return Interval(min(a.lo, b.lo), min(a.hi, b.hi))


# ---------------------------------------------------------------------------
# Roots and rational powers
# ---------------------------------------------------------------------------

def sqrt_fraction(q: Fraction, bits: int = DEFAULT_BITS) -> Interval:
    """Enclosure of sqrt(q) with width at most 2^-bits; exact for perfect
    squares."""
    if q < 0:
        raise ValueError("square root of a negative rational")
    if q == 0:
        return Interval.exact(0)
    n, d = q.numerator, q.denominator
    m = n * d
    scaled = m << (2 * bits)
    s = int(gmpy2.isqrt(scaled))
    denom = d << bits
    lo = Fraction(s, denom)
    if s * s == scaled:
        return Interval(lo, lo)
    return Interval(lo, Fraction(s + 1, denom))


def sqrt_interval(x: Interval, bits: int = DEFAULT_BITS) -> Interval:
    if x.lo < 0:
        raise ValueError("square root of an interval reaching below zero")
    return Interval(sqrt_fraction(x.lo, bits).lo, sqrt_fraction(x.hi, bits).hi)


def nth_root_fraction(q: Fraction, n: int, bits: int = DEFAULT_BITS) -> Interval:
    """Enclosure of q^(1/n) for q >= 0, n >= 1; exact for perfect powers."""
    if n < 1:
        raise ValueError("root degree must be >= 1")
    if q < 0:
        raise ValueError("nth root of a negative rational")
    if q == 0:
        return Interval.exact(0)
    if n == 1:
        return Interval.exact(q)
    num, den = q.numerator, q.denominator
    m = num * den ** (n - 1)
    scaled = m << (n * bits)
    root, exact = gmpy2.iroot(gmpy2.mpz(scaled), n)
    root = int(root)
    denom = den << bits
    lo = Fraction(root, denom)
    if exact:
        return Interval(lo, lo)
    return Interval(lo, Fraction(root + 1, denom))


def pow_fraction(base: Fraction, exponent: Fraction, bits: int = DEFAULT_BITS) -> Interval:
    """Enclosure of base**exponent for base >= 0 and rational exponent."""
    if exponent.denominator == 1:
        e = exponent.numerator
        if base == 0:
            if e < 0:
                raise ZeroDivisionError("0 raised to a negative power")
            return Interval.exact(1 if e == 0 else 0)
        return Interval.exact(base ** e)
    if base < 0:
        raise ValueError("rational power of a negative base")
    if base == 0:
        if exponent < 0:
            raise ZeroDivisionError("0 raised to a negative power")
        return Interval.exact(0 if exponent > 0 else 1)
    t = base ** exponent.numerator  # exact; exponent.numerator may be negative
    return nth_root_fraction(t, exponent.denominator, bits)


def pow_interval(base: Interval, exponent: Fraction, bits: int = DEFAULT_BITS) -> Interval:
    """Monotone extension of pow_fraction to interval bases (base >= 0)."""
    if base.lo < 0:
        raise ValueError("rational power of an interval reaching below zero")
    if exponent >= 0:
        return Interval(pow_fraction(base.lo, exponent, bits).lo,
                        pow_fraction(base.hi, exponent, bits).hi)
    if base.lo == 0:
        raise ZeroDivisionError("0 raised to a negative power")
    return Interval(pow_fraction(base.hi, exponent, bits).lo,
                    pow_fraction(base.lo, exponent, bits).hi)


# ---------------------------------------------------------------------------
# Base-2 logarithm
# ---------------------------------------------------------------------------

def _power_of_two_exponent(q: Fraction) -> int | None:
    n, d = q.numerator, q.denominator
    if n == 1 and d & (d - 1) == 0:
        return -(d.bit_length() - 1)
    if d == 1 and n & (n - 1) == 0:
        return n.bit_length() - 1
    return None


def log2_fraction(q: Fraction, bits: int = DEFAULT_BITS) -> Interval:
    """Enclosure of log2(q) for q > 0 by binary digit extraction.

    Exact when q is a power of two; otherwise the squared iterates can never
    hit 2 exactly, so every digit resolves at a finite guard precision.
    """
    if q <= 0:
        raise ValueError("log2 of a nonpositive rational")
    exact = _power_of_two_exponent(q)
    if exact is not None:
        return Interval.exact(exact)

    # normalize q = z * 2^e with z in [1, 2)
    e = q.numerator.bit_length() - q.denominator.bit_length()
    z0 = q / Fraction(2) ** e
    if z0 >= 2:
        e += 1
        z0 /= 2
    elif z0 < 1:
        e -= 1
        z0 *= 2

    guard = bits + 64
    while guard <= MAX_BITS:
        z = Interval.exact(z0)
        digits = 0
        ok = True
        for _ in range(bits):
            z = z.square().rounded(guard)
            digits <<= 1
            if z.lo >= 2:
                digits |= 1
                z = Interval(z.lo / 2, z.hi / 2)
            elif z.hi < 2:
                pass
            else:
                ok = False
                break
        if ok:
            frac = Fraction(digits, 1 << bits)
            return Interval(e + frac, e + frac + Fraction(1, 1 << bits))
        guard *= 2
    raise PrecisionError(f"log2({q}) digit extraction stalled at {MAX_BITS} bits")


def log2_interval(x: Interval, bits: int = DEFAULT_BITS) -> Interval:
    return Interval(log2_fraction(x.lo, bits).lo, log2_fraction(x.hi, bits).hi)


def inv_sqrt2(bits: int = DEFAULT_BITS) -> Interval:
    return sqrt_fraction(Fraction(1, 2), bits)


T = TypeVar("T")


def with_escalation(
    attempt: Callable[[int], T | None],
    start_bits: int = DEFAULT_BITS,
    max_bits: int = MAX_BITS,
) -> T:
    """Retry `attempt` with doubling precision until it returns a result."""
    bits = start_bits
    while bits <= max_bits:
        result = attempt(bits)
        if result is not None:
            return result
        bits *= 2
    raise PrecisionError(f"comparison still inconclusive at {max_bits} bits")
