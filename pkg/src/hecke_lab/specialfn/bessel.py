"""Bessel function of the first kind J_ν(t) for real ν >= 0 and t > 0."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from loguru import logger

from hecke_lab.errors import BudgetExhaustedError, DomainError
from hecke_lab.specialfn.budget import DEFAULT_BUDGET, EvalBudget
from hecke_lab.specialfn.gamma import loggamma
from hecke_lab.specialfn.summation import DoubleDouble, NeumaierAccumulator

_HANKEL_USABLE = 1e-6
# rounding of a double-double sum, relative to its largest term
_DOUBLE_DOUBLE_EPS = 1e-30
_EXACT_PREFACTOR_ORDER = 100


class HankelValue(NamedTuple):
    value: float
    smallest_term: float


def bessel_j(nu: float, t: float, budget: EvalBudget = DEFAULT_BUDGET) -> float:
    """J_ν(t): ascending series up to the crossover, Hankel asymptotics beyond.

    Past the crossover the Hankel value is kept only when its smallest term is
    within rel_tol of the envelope sqrt(2/(πt)); otherwise the double-double
    series is tried, and BudgetExhaustedError is raised when neither reaches rel_tol.
    """
    if nu < 0.0:
        raise DomainError(f"bessel_j needs nu >= 0, got {nu}")
    if t <= 0.0:
        raise DomainError(f"bessel_j needs t > 0, got {t}")
    if t <= crossover(nu):
        return bessel_j_series(nu, t, budget)
    hankel = hankel_expansion(nu, t, budget)
    if hankel.smallest_term <= budget.rel_tol:
        return hankel.value
    logger.debug(f"Hankel expansion for nu={nu}, t={t} stops at {hankel.smallest_term:.2e}; using the series")
    return _series_past_crossover(nu, t, budget, hankel.smallest_term)


def crossover(nu: float) -> float:
    return max(12.0, 1.5 * nu)


def bessel_j_series(nu: float, t: float, budget: EvalBudget = DEFAULT_BUDGET) -> float:
    """Σ (-1)^k (t/2)^{2k+ν} / (k! Γ(ν+k+1)), summed in double-double."""
    total, _ = _ascending_sum(nu, t, budget)
    return float(total) * _series_prefactor(nu, t)


def _ascending_sum(nu: float, t: float, budget: EvalBudget) -> tuple[DoubleDouble, float]:
    """The series without its (t/2)^ν/Γ(ν+1) prefactor, and its largest term."""
    half = DoubleDouble(t) / 2.0
    step = -(half * half)
    term = DoubleDouble(1.0)
    total = DoubleDouble(1.0)
    largest = 1.0
    for k in range(1, budget.max_terms + 1):
        term = term * step / (DoubleDouble(float(k)) * (nu + k))
        total = total + term
        largest = max(largest, abs(term))
        if abs(term) <= budget.rel_tol * 1e-3 * max(abs(total), budget.abs_floor):
            return total, largest
    raise BudgetExhaustedError(f"Bessel series for nu={nu}, t={t} did not converge in {budget.max_terms} terms")


def _series_prefactor(nu: float, t: float) -> float:
    if nu == 0.0:
        return 1.0
    if float(nu).is_integer() and nu <= _EXACT_PREFACTOR_ORDER:
        return (t / 2.0) ** nu / math.factorial(int(nu))
    return math.exp(nu * math.log(t / 2.0) - loggamma(nu + 1.0).real)


def _series_past_crossover(nu: float, t: float, budget: EvalBudget, hankel_error: float) -> float:
    total, largest = _ascending_sum(nu, t, budget)
    prefactor = _series_prefactor(nu, t)
    value = float(total) * prefactor
    envelope = max(abs(value), math.sqrt(2.0 / (math.pi * t)))
    series_error = _DOUBLE_DOUBLE_EPS * largest * prefactor / envelope
    if series_error <= budget.rel_tol:
        return value
    message = (
        f"J_{nu}({t}): Hankel error {hankel_error:.2e} and series cancellation {series_error:.2e} "
        f"both exceed rel_tol {budget.rel_tol:.0e}"
    )
    logger.warning(message)
    raise BudgetExhaustedError(message)


def hankel_expansion(nu: float, t: float, budget: EvalBudget = DEFAULT_BUDGET) -> HankelValue:
    """sqrt(2/(πt))(P cos χ - Q sin χ), optimally truncated, with the smallest term kept."""
    mu = 4.0 * nu * nu
    p_sum = NeumaierAccumulator()
    q_sum = NeumaierAccumulator()
    term = 1.0
    previous = math.inf
    for k in range(budget.max_terms):
        if k > 0:
            term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * t)
        size = abs(term)
        if size > previous and (2 * k - 1) ** 2 > mu:
            break
        (p_sum if k % 2 == 0 else q_sum).add(term * (-1) ** (k // 2))
        previous = size
        if size <= budget.rel_tol * 1e-2:
            break
    else:
        raise BudgetExhaustedError(f"Hankel expansion for nu={nu}, t={t} exceeded {budget.max_terms} terms")
    chi = t - (0.5 * nu + 0.25) * math.pi
    amplitude = math.sqrt(2.0 / (math.pi * t))
    return HankelValue(amplitude * (p_sum.value.real * math.cos(chi) - q_sum.value.real * math.sin(chi)), previous)


def bessel_j_many(nu: float, t: np.ndarray, budget: EvalBudget = DEFAULT_BUDGET) -> np.ndarray:
    """bessel_j over an array: the Hankel branch runs vectorized, everything else point by point."""
    if nu < 0.0:
        raise DomainError(f"bessel_j needs nu >= 0, got {nu}")
    t = np.asarray(t, dtype=np.float64)
    flat = t.ravel()
    if np.any(flat <= 0.0):
        raise DomainError(f"bessel_j needs t > 0, got {flat.min()}")
    values = np.empty_like(flat)
    far = np.flatnonzero(flat > crossover(nu))
    hankel, smallest = _hankel_many(nu, flat[far], budget)
    good = smallest <= budget.rel_tol
    values[far[good]] = hankel[good]
    pending = np.ones(flat.size, dtype=bool)
    pending[far[good]] = False
    for i in np.flatnonzero(pending):
        values[i] = bessel_j(nu, float(flat[i]), budget)
    return values.reshape(t.shape)


def _hankel_many(nu: float, t: np.ndarray, budget: EvalBudget) -> tuple[np.ndarray, np.ndarray]:
    """hankel_expansion entry by entry, with the same stopping rule."""
    mu = 4.0 * nu * nu
    term = np.ones_like(t)
    p_sum = np.zeros_like(t)
    q_sum = np.zeros_like(t)
    previous = np.full_like(t, math.inf)
    active = np.ones(t.shape, dtype=bool)
    for k in range(budget.max_terms):
        if not active.any():
            break
        if k > 0:
            term = np.where(active, term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * t), 0.0)
        size = np.abs(term)
        if (2 * k - 1) ** 2 > mu:
            active &= size <= previous
        signed = np.where(active, term * (-1) ** (k // 2), 0.0)
        if k % 2 == 0:
            p_sum += signed
        else:
            q_sum += signed
        previous = np.where(active, size, previous)
        active &= size > budget.rel_tol * 1e-2
    else:
        raise BudgetExhaustedError(f"Hankel expansion for nu={nu} exceeded {budget.max_terms} terms")
    chi = t - (0.5 * nu + 0.25) * math.pi
    amplitude = np.sqrt(2.0 / (math.pi * t))
    return amplitude * (p_sum * np.cos(chi) - q_sum * np.sin(chi)), previous


def bessel_j_asymptotic(nu: float, t: float, budget: EvalBudget = DEFAULT_BUDGET) -> float:
    """The Hankel value alone; refuses when the expansion bottoms out above 1e-6."""
    hankel = hankel_expansion(nu, t, budget)
    if hankel.smallest_term > _HANKEL_USABLE:
        raise BudgetExhaustedError(f"Hankel expansion for nu={nu}, t={t} bottoms out at {hankel.smallest_term:.2e}")
    return hankel.value


if __name__ == "__main__":
    for order, arg in ((0.0, 1e-300), (0.5, 2.0), (5.0, 7.0), (8.0, 12.01), (14.0, 40.0)):
        print(f"J_{order}({arg}) = {bessel_j(order, arg)!r}")
