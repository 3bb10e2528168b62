"""Gauss and Kummer hypergeometric functions and the Tricomi function Ψ.

Series are summed with a Neumaier accumulator. Confluent functions switch to
their large-|z| expansions beyond ASYMPTOTIC_RADIUS when the expansion reaches
the budget's relative tolerance; for integer parameters these expansions
terminate and are exact.
"""

from __future__ import annotations

import cmath
import math

from loguru import logger

from hecke_lab.errors import BudgetExhaustedError, DomainError, PoleError
from hecke_lab.specialfn.budget import DEFAULT_BUDGET, EvalBudget
from hecke_lab.specialfn.gamma import gamma, is_gamma_pole, loggamma, rgamma
from hecke_lab.specialfn.summation import NeumaierAccumulator

ASYMPTOTIC_RADIUS = 20.0


def hyp1f1(a: complex, b: complex, z: complex, budget: EvalBudget = DEFAULT_BUDGET) -> complex:
    """₁F₁(a; b; z) with the Kummer transformation for Re z < -1."""
    a, b, z = complex(a), complex(b), complex(z)
    _check_parameter_pole("b", b)
    if z.real < -1.0:
        return cmath.exp(z) * hyp1f1(b - a, b, -z, budget)
    if abs(z) > ASYMPTOTIC_RADIUS:
        value, error = hyp1f1_asymptotic(a, b, z, budget)
        relative = error / max(abs(value), budget.abs_floor)
        if relative <= max(budget.rel_tol, _series_cancellation(z)):
            return value
        logger.debug(f"1F1({a}; {b}; {z}) asymptotic error {error:.2e} too large, summing the series")
    return hyp1f1_series(a, b, z, budget)


def hyp1f1_series(a: complex, b: complex, z: complex, budget: EvalBudget = DEFAULT_BUDGET) -> complex:
    """Raw Kummer series Σ (a)_n/(b)_n zⁿ/n!, no transformation."""
    a, b, z = complex(a), complex(b), complex(z)
    _check_parameter_pole("b", b)
    total = NeumaierAccumulator()
    term = 1.0 + 0j
    total.add(term)
    for n in range(budget.max_terms):
        ratio = (a + n) * z / ((b + n) * (n + 1))
        term *= ratio
        total.add(term)
        if term == 0 or (abs(ratio) < 1.0 and abs(term) <= budget.rel_tol * max(abs(total.value), budget.abs_floor)):
            return total.value
    raise BudgetExhaustedError(f"1F1({a}; {b}; {z}) series exceeded {budget.max_terms} terms")


def hyp1f1_asymptotic(a: complex, b: complex, z: complex, budget: EvalBudget = DEFAULT_BUDGET) -> tuple[complex, float]:
    """Large-|z| expansion of ₁F₁; returns (value, absolute error estimate)."""
    log_z = cmath.log(z)
    sign = 1.0 if cmath.phase(z) > -math.pi / 2 else -1.0
    exponential_part = 0j
    exponential_error = 0.0
    if not is_gamma_pole(a):
        series, error = _asymptotic_sum(1.0 - a, b - a, 1.0 / z, budget)
        scale = cmath.exp(loggamma(b) - loggamma(a) + z + (a - b) * log_z)
        exponential_part, exponential_error = scale * series, abs(scale) * error
    algebraic_part = 0j
    algebraic_error = 0.0
    if not is_gamma_pole(b - a):
        series, error = _asymptotic_sum(a, a - b + 1.0, -1.0 / z, budget)
        scale = cmath.exp(loggamma(b) - loggamma(b - a) - a * log_z + sign * 1j * math.pi * a)
        algebraic_part, algebraic_error = scale * series, abs(scale) * error
    return exponential_part + algebraic_part, exponential_error + algebraic_error


def _asymptotic_sum(p: complex, q: complex, w: complex, budget: EvalBudget) -> tuple[complex, float]:
    """Σ (p)_s (q)_s wˢ/s! truncated at its smallest term."""
    total = NeumaierAccumulator()
    term = 1.0 + 0j
    total.add(term)
    smallest = 1.0
    terminating = is_gamma_pole(p) or is_gamma_pole(q)
    for s in range(budget.max_terms):
        next_term = term * (p + s) * (q + s) * w / (s + 1)
        size = abs(next_term)
        if size == 0.0:
            return total.value, 0.0
        if size > smallest and not terminating:
            return total.value, smallest
        term = next_term
        total.add(term)
        smallest = size
        if size <= budget.rel_tol * 1e-2 * abs(total.value) and not terminating:
            return total.value, size
    return total.value, smallest


def hyp2f1(a: complex, b: complex, c: complex, z: complex, budget: EvalBudget = DEFAULT_BUDGET) -> complex:
    """Gauss series ₂F₁(a, b; c; z) inside the unit disk."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if abs(z) >= 1.0:
        raise DomainError(f"hyp2f1 needs |z| < 1, got |z| = {abs(z)}")
    _check_parameter_pole("c", c)
    total = NeumaierAccumulator()
    term = 1.0 + 0j
    total.add(term)
    geometric_tail = 1.0 / (1.0 - abs(z))
    for n in range(budget.max_terms):
        ratio = (a + n) * (b + n) * z / ((c + n) * (n + 1))
        term *= ratio
        total.add(term)
        if term == 0:
            return total.value
        settled = abs(ratio) < 1.0 and n > abs(a * b)
        if settled and abs(term) * geometric_tail <= budget.rel_tol * max(abs(total.value), budget.abs_floor):
            return total.value
    raise BudgetExhaustedError(f"2F1({a}, {b}; {c}; {z}) series exceeded {budget.max_terms} terms")


def tricomi_u(a: complex, b: complex, z: complex, budget: EvalBudget = DEFAULT_BUDGET) -> complex:
    """Ψ(a, b; z) through the two-term ₁F₁ connection formula (principal branch)."""
    a, b, z = complex(a), complex(b), complex(z)
    if abs(b.imag) == 0.0 and float(b.real).is_integer():
        raise DomainError(f"tricomi_u needs non-integer b, got {b}")
    if z == 0:
        raise DomainError("tricomi_u is singular at z = 0")
    if abs(z) > ASYMPTOTIC_RADIUS:
        series, error = _asymptotic_sum(a, a - b + 1.0, -1.0 / z, budget)
        if error <= max(budget.rel_tol, _series_cancellation(z)) * abs(series):
            return cmath.exp(-a * cmath.log(z)) * series
    first = gamma(1.0 - b) * rgamma(a + 1.0 - b) * hyp1f1(a, b, z, budget)
    second = gamma(b - 1.0) * rgamma(a) * cmath.exp((1.0 - b) * cmath.log(z))
    if second != 0:
        second *= hyp1f1(a + 1.0 - b, 2.0 - b, z, budget)
    return first + second


def _series_cancellation(z: complex) -> float:
    """Relative error the raw series would suffer from term growth at this |z|."""
    return 2.2e-16 * math.exp(min(abs(z), 700.0))


def _check_parameter_pole(name: str, value: complex) -> None:
    if is_gamma_pole(value):
        raise PoleError(f"hypergeometric parameter {name} = {value} is a nonpositive integer")


if __name__ == "__main__":
    print(f"1F1(1; 2; -4) = {hyp1f1(1, 2, -4)} vs {(math.exp(-4) - 1) / -4}")
    print(f"2F1(1, 1; 2; 1/2) = {hyp2f1(1, 1, 2, 0.5)} vs {-math.log(0.5) / 0.5}")
    print(f"U(3/2, 5/2; 2+i) = {tricomi_u(1.5, 2.5, 2 + 1j)} vs {(2 + 1j) ** -1.5}")
