"""Exact products of rational powers of positive rationals.

Threshold bookkeeping in the parametric strategies multiplies factors like
(1-2*delta)^(2-2*eps) whose exponents are rational but not integral.  A
PowerProduct keeps those factors symbolic; comparison against a rational is
decided exactly by raising both sides to the least common denominator of the
exponents, which turns everything into integer powers of rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .intervals import Interval, pow_fraction


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class PowerProduct:
    """coeff * prod(base_i ** exp_i) with positive rational bases."""

    coeff: Fraction = Fraction(1)
    factors: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self) -> None:
        if self.coeff <= 0:
            raise ValueError("coefficient must be positive")
        merged: dict[Fraction, Fraction] = {}
        coeff = self.coeff
        for base, exp in self.factors:
            if base <= 0:
                raise ValueError("bases must be positive")
            if base == 1 or exp == 0:
                continue
            if exp.denominator == 1:
                coeff *= base ** exp.numerator
                continue
            merged[base] = merged.get(base, Fraction(0)) + exp
        canon = tuple(sorted(
            ((b, e) for b, e in merged.items() if e != 0)))
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "factors", canon)

    @staticmethod
    def of(value: Fraction | int) -> PowerProduct:
        return PowerProduct(Fraction(value))

    def __mul__(self, other: PowerProduct | Fraction | int) -> PowerProduct:
        if isinstance(other, PowerProduct):
            return PowerProduct(self.coeff * other.coeff,
                                self.factors + other.factors)
        return PowerProduct(self.coeff * Fraction(other), self.factors)

    __rmul__ = __mul__

    def __truediv__(self, other: PowerProduct | Fraction | int) -> PowerProduct:
        if isinstance(other, PowerProduct):
            inv = tuple((b, -e) for b, e in other.factors)
            return PowerProduct(self.coeff / other.coeff, self.factors + inv)
        return PowerProduct(self.coeff / Fraction(other), self.factors)

    def __pow__(self, exponent: Fraction | int) -> PowerProduct:
        exponent = Fraction(exponent)
        factors = tuple((b, e * exponent) for b, e in self.factors)
        if exponent.denominator == 1:
            return PowerProduct(self.coeff ** exponent.numerator, factors)
        return PowerProduct(Fraction(1),
                            ((self.coeff, exponent),) + factors)

    def as_fraction(self) -> Fraction | None:
        """The exact rational value, or None if genuinely irrational-powered."""
        return self.coeff if not self.factors else None

    def _common_denominator(self) -> int:
        den = 1
        for _, e in self.factors:
            den = _lcm(den, e.denominator)
        return den

    def _integerized(self, power: int) -> Fraction:
        """self ** power as an exact rational; power must clear denominators."""
        out = self.coeff ** power
        for base, exp in self.factors:
            e = exp * power
            assert e.denominator == 1
            out *= base ** e.numerator
        return out

    def compare(self, other: PowerProduct | Fraction | int) -> int:
        """-1, 0, or 1; exact for any operands."""
        if not isinstance(other, PowerProduct):
            value = Fraction(other)
            if value <= 0:
                return 1  # every power product is strictly positive
            other = PowerProduct.of(value)
        ratio = self / other
        n = ratio._common_denominator()
        value = ratio._integerized(n)
        return (value > 1) - (value < 1)

    def __lt__(self, other: PowerProduct | Fraction | int) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: PowerProduct | Fraction | int) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: PowerProduct | Fraction | int) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: PowerProduct | Fraction | int) -> bool:
        return self.compare(other) >= 0

    def equals(self, other: PowerProduct | Fraction | int) -> bool:
        return self.compare(other) == 0

    def to_interval(self, bits: int) -> Interval:
        out = Interval.exact(self.coeff)
        for base, exp in self.factors:
            out = out * pow_fraction(base, exp, bits)
        return out

    def __str__(self) -> str:
        parts = [str(self.coeff)]
        parts.extend(f"({b})^({e})" for b, e in self.factors)
        return " * ".join(parts)
