"""Truncated formal power series over the rationals, and the secant-plane count.

All arithmetic uses :class:`fractions.Fraction`; a series of order ``N``
stores the coefficients of ``z**0 .. z**N`` and nothing beyond.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


class SeriesError(ValueError):
    code = "validation"


@dataclass(frozen=True)
class PowerSeries:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise SeriesError("a series needs at least the constant term")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @classmethod
    def of(cls, coefficients: Iterable, order: int) -> PowerSeries:
        """Pad or truncate ``coefficients`` to the given order."""
        cs = list(coefficients)[: order + 1]
        cs += [0] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i]

    def __iter__(self):
        return iter(self.coefficients)

    def _common(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries.of([other], self.order)
        n = min(self.order, other.order)
        return self.coefficients[: n + 1], other.coefficients[: n + 1]

    def __add__(self, other):
        a, b = self._common(other)
        return PowerSeries(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._common(other)
        return PowerSeries(tuple(x - y for x, y in zip(a, b)))

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coefficients))

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = Fraction(other)
            return PowerSeries(tuple(c * x for x in self.coefficients))
        a, b = self._common(other)
        n = len(a)
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    out[i + j] += x * b[j]
        return PowerSeries(tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> PowerSeries:
        a = self.coefficients
        if a[0] == 0:
            raise SeriesError("series with zero constant term is not invertible")
        inv = [Fraction(1) / a[0]]
        for n in range(1, len(a)):
            s = sum(a[i] * inv[n - i] for i in range(1, n + 1))
            inv.append(-s / a[0])
        return PowerSeries(tuple(inv))

    def __truediv__(self, other):
        if not isinstance(other, PowerSeries):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def sqrt(self) -> PowerSeries:
        """Square root with constant term 1; requires f(0) = 1."""
        a = self.coefficients
        if a[0] != 1:
            raise SeriesError("square root needs constant term 1")
        # s*s = f  =>  2 s_n = a_n - sum_{i=1}^{n-1} s_i s_{n-i}
        s = [Fraction(1)]
        for n in range(1, len(a)):
            acc = a[n] - sum(s[i] * s[n - i] for i in range(1, n))
            s.append(acc / 2)
        return PowerSeries(tuple(s))

    def shift_down(self) -> PowerSeries:
        """(f - f(0)) / z, losing one order."""
        if self.order == 0:
            raise SeriesError("cannot divide an order-0 series by z")
        return PowerSeries(self.coefficients[1:])


def z_series(order: int) -> PowerSeries:
    return PowerSeries.of([0, 1], order)


def one_plus_4z(order: int) -> PowerSeries:
    return PowerSeries.of([1, 4], order)


def sqrt_1_plus_4z(order: int) -> PowerSeries:
    if order < 0:
        raise SeriesError("order must be nonnegative")
    return one_plus_4z(order).sqrt()


def series_pow(f: PowerSeries, exponent) -> PowerSeries:
    """``f ** exponent`` for f(0) = 1 and an integer or half-integer exponent.

    Half-integer powers take the square root first; negative powers invert.
    """
    if f[0] != 1:
        raise SeriesError("series_pow needs constant term 1")
    e = Fraction(exponent)
    if e.denominator not in (1, 2):
        raise SeriesError(f"exponent {exponent} must be an integer or a half-integer")
    base = f.sqrt() if e.denominator == 2 else f
    m = e.numerator
    if m < 0:
        base = base.inverse()
        m = -m
    result = PowerSeries.of([1], f.order)
    while m:
        if m & 1:
            result = result * base
        base = base * base
        m >>= 1
    return result


def secant_generating_series(g: int, m: int, order: int) -> PowerSeries:
    """(2 / ((1+4z)^(1/2) + 1))^(2g-2-m) * (1+4z)^((g-1)/2) to the given order."""
    s = sqrt_1_plus_4z(order)
    half = (s + 1) * Fraction(1, 2)  # ((1+4z)^(1/2) + 1) / 2
    first = series_pow(half, -(2 * g - 2 - m))
    second = series_pow(one_plus_4z(order), Fraction(g - 1, 2))
    return first * second


@dataclass(frozen=True)
class SecantTable:
    g: int
    m: int
    values: tuple[Fraction, ...]
    geometric: bool

    @property
    def non_integral(self) -> tuple[int, ...]:
        return tuple(d for d, v in enumerate(self.values) if v.denominator != 1)


GUARD_TERMS = 2


def n_d_table(g: int, m: int, max_d: int) -> SecantTable:
    """Coefficients N_0 .. N_max_d of the secant-plane generating series.

    Inputs outside the geometric range (g < 0 or m < 1) are computed anyway
    and marked ``geometric=False``.
    """
    if max_d < 0:
        raise SeriesError("max_d must be nonnegative")
    series = secant_generating_series(g, m, max_d + GUARD_TERMS)
    values = series.coefficients[: max_d + 1]
    return SecantTable(g, m, values, geometric=g >= 0 and m >= 1)


def rho(d: int, g: int, r: int) -> int:
    """Brill-Noether number g - (r+1)(g-d+r)."""
    return g - (r + 1) * (g - d + r)


def mu(d: int, r: int, s: int) -> int:
    """Expected dimension d - r(s+1-d+r) of d-secant (d-r-1)-planes."""
    return d - r * (s + 1 - d + r)
