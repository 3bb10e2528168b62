"""Quadrature wrappers: adaptive QUADPACK for complex integrands, trapezoid rules on circles and lines."""

from __future__ import annotations

import cmath
import math
from collections.abc import Callable
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from loguru import logger
from scipy import integrate

from hecke_lab.errors import BudgetExhaustedError


class QuadResult(NamedTuple):
    value: complex
    error: float


def complex_quad(
    func: Callable[[float], complex],
    a: float,
    b: float,
    *,
    epsabs: float = 1e-13,
    epsrel: float = 1e-12,
    limit: int = 200,
) -> QuadResult:
    """∫_a^b func by scipy's adaptive Gauss–Kronrod, real and imaginary parts separately.

    Raises BudgetExhaustedError when QUADPACK flags a failure and its error
    estimate is more than a hundred times the requested tolerance.
    """
    cached = lru_cache(maxsize=None)(func)
    parts = []
    error = 0.0
    for component in (lambda x: complex(cached(x)).real, lambda x: complex(cached(x)).imag):
        out = integrate.quad(component, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)
        value, abserr = out[0], out[1]
        if len(out) > 3:
            allowed = 100.0 * max(epsabs, epsrel * abs(value))
            if abserr > allowed:
                raise BudgetExhaustedError(f"quad on [{a}, {b}] failed: {out[3]} (error {abserr:.2e})")
            logger.debug(f"quad on [{a}, {b}] warned but error {abserr:.2e} is acceptable")
        parts.append(value)
        error += abserr
    return QuadResult(complex(parts[0], parts[1]), error)


def circle_trapezoid(func: Callable[[complex], complex], center: complex, radius: float, n: int) -> complex:
    """(1/2πi)∮ func ds over |s - center| = radius with n equally spaced nodes."""
    assert n >= 4, f"need at least 4 nodes, got {n}"
    total = 0j
    for j in range(n):
        offset = radius * cmath.exp(2j * math.pi * j / n)
        total += func(center + offset) * offset
    return total / n


def line_trapezoid(
    func: Callable[[np.ndarray], np.ndarray],
    sigma: float,
    half_height: float,
    step: float,
) -> complex:
    """(1/2πi)∫_{σ-iT}^{σ+iT} func ds; func receives the vector of nodes s = σ + it."""
    count = int(math.ceil(half_height / step))
    t = np.linspace(-count * step, count * step, 2 * count + 1)
    values = func(sigma + 1j * t)
    weights = np.full(t.size, step)
    weights[0] = weights[-1] = step / 2
    return complex(np.sum(values * weights) / (2 * math.pi))


if __name__ == "__main__":
    print(complex_quad(lambda x: cmath.exp(1j * x), 0.0, math.pi))
    print(circle_trapezoid(lambda s: 1 / s, 0j, 0.5, 32))
