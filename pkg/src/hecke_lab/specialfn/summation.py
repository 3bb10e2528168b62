"""Compensated summation and double-double arithmetic for series loops."""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def compensated_sum(values: Iterable[complex] | np.ndarray) -> complex:
    """Sum real or complex values with exact (Shewchuk) partials per component."""
    if isinstance(values, np.ndarray):
        return complex(math.fsum(np.real(values).ravel().tolist()), math.fsum(np.imag(values).ravel().tolist()))
    reals: list[float] = []
    imags: list[float] = []
    for value in values:
        z = complex(value)
        reals.append(z.real)
        imags.append(z.imag)
    return complex(math.fsum(reals), math.fsum(imags))


def _neumaier(total: float, comp: float, term: float) -> tuple[float, float]:
    new_total = total + term
    if abs(total) >= abs(term):
        comp += (total - new_total) + term
    else:
        comp += (term - new_total) + total
    return new_total, comp


class NeumaierAccumulator:
    """Running compensated sum for loops that stop on a tail criterion."""

    __slots__ = ("_comp_im", "_comp_re", "_sum_im", "_sum_re", "count")

    def __init__(self) -> None:
        self._sum_re = 0.0
        self._sum_im = 0.0
        self._comp_re = 0.0
        self._comp_im = 0.0
        self.count = 0

    def add(self, term: complex) -> None:
        z = complex(term)
        self._sum_re, self._comp_re = _neumaier(self._sum_re, self._comp_re, z.real)
        self._sum_im, self._comp_im = _neumaier(self._sum_im, self._comp_im, z.imag)
        self.count += 1

    @property
    def value(self) -> complex:
        return complex(self._sum_re + self._comp_re, self._sum_im + self._comp_im)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    high = c - (c - a)
    return high, a - high


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Error-free sum: s + err == a + b exactly."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    """Error-free sum assuming |a| >= |b|."""
    s = a + b
    return s, b - (s - a)


def two_prod(a: float, b: float) -> tuple[float, float]:
    """Error-free product: p + err == a * b exactly."""
    p = a * b
    if hasattr(math, "fma"):
        return p, math.fma(a, b, -p)
    a_hi, a_lo = _split(a)
    b_hi, b_lo = _split(b)
    return p, ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo


@dataclass(frozen=True, slots=True)
class DoubleDouble:
    """Unevaluated sum hi + lo with |lo| <= ulp(hi)/2 (about 32 significant digits)."""

    hi: float
    lo: float = 0.0

    @staticmethod
    def of(value: float | DoubleDouble) -> DoubleDouble:
        return value if isinstance(value, DoubleDouble) else DoubleDouble(float(value))

    def __add__(self, other: float | DoubleDouble) -> DoubleDouble:
        o = DoubleDouble.of(other)
        s, e = two_sum(self.hi, o.hi)
        t, f = two_sum(self.lo, o.lo)
        s, e = quick_two_sum(s, e + t)
        return DoubleDouble(*quick_two_sum(s, e + f))

    __radd__ = __add__

    def __neg__(self) -> DoubleDouble:
        return DoubleDouble(-self.hi, -self.lo)

    def __sub__(self, other: float | DoubleDouble) -> DoubleDouble:
        return self + (-DoubleDouble.of(other))

    def __mul__(self, other: float | DoubleDouble) -> DoubleDouble:
        o = DoubleDouble.of(other)
        p, e = two_prod(self.hi, o.hi)
        e += self.hi * o.lo + self.lo * o.hi
        return DoubleDouble(*quick_two_sum(p, e))

    __rmul__ = __mul__

    def __truediv__(self, other: float | DoubleDouble) -> DoubleDouble:
        o = DoubleDouble.of(other)
        q1 = self.hi / o.hi
        remainder = self - o * q1
        q2 = remainder.hi / o.hi
        return DoubleDouble(*quick_two_sum(q1, q2))

    def __abs__(self) -> float:
        return abs(self.hi + self.lo)

    def __float__(self) -> float:
        return self.hi + self.lo


if __name__ == "__main__":
    third = DoubleDouble(1.0) / 3.0
    print(f"1/3 in double-double: hi={third.hi!r} lo={third.lo!r}")
    print(f"fsum of [1e16, 1, -1e16] = {compensated_sum([1e16, 1.0, -1e16])}")
