"""Exact Bernoulli numbers and an Euler–Maclaurin Riemann zeta for Re s > 1."""

from __future__ import annotations

from fractions import Fraction
from functools import cache

from hecke_lab.errors import DomainError
from hecke_lab.specialfn.summation import compensated_sum

_EM_CUTOFF = 30
_EM_CORRECTIONS = 12


@cache
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0 … B_n as exact rationals (Akiyama–Tanigawa), convention B_1 = +1/2."""
    assert n >= 0, f"n must be nonnegative, got {n}"
    numbers = []
    row = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        numbers.append(row[0])
    return tuple(numbers)


def zeta(s: complex) -> complex:
    """ζ(s) by Euler–Maclaurin with a fixed cutoff; independent of any coefficient sum."""
    s = complex(s)
    if s.real <= 1.0:
        raise DomainError(f"zeta oracle needs Re s > 1, got {s}")
    n = _EM_CUTOFF
    head = compensated_sum(k ** (-s) for k in range(1, n))
    tail = [n ** (1.0 - s) / (s - 1.0), 0.5 * n ** (-s)]
    bernoulli = bernoulli_numbers(2 * _EM_CORRECTIONS)
    rising = s
    factorial = 1.0
    for j in range(1, _EM_CORRECTIONS + 1):
        factorial *= (2 * j - 1) * (2 * j)
        tail.append(float(bernoulli[2 * j]) / factorial * rising * n ** (-s - 2 * j + 1))
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return head + compensated_sum(tail)


if __name__ == "__main__":
    print(f"zeta(2) = {zeta(2).real!r} (pi^2/6 = {1.6449340668482264!r})")
    print(f"B_0..B_6 = {bernoulli_numbers(6)}")
