"""Requests, per-point reports and the term bundles both identities return."""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Literal

from hecke_lab.errors import DomainError
from hecke_lab.lseries import CompletedL
from hecke_lab.specialfn import EvalBudget, compensated_sum

IdentityKind = Literal["first", "second"]
Smoothing = Literal["auto", "on", "off"]
FIRST_TERM_NAMES = ("L1", "L2", "L3", "L4", "L5")
SECOND_TERM_NAMES = ("a0term", "resolvent", "psi1", "psi2", "gammapair", "extra")
# Bessel series cap for the first identity
MAX_BESSEL_TERMS = 100_000
IDENTITY_BUDGET = EvalBudget(max_terms=MAX_BESSEL_TERMS)


@dataclass(frozen=True)
class IdentityTerms:
    """Named right-hand-side terms plus the bookkeeping of how they were computed."""

    terms: dict[str, complex]
    terms_used: int = 0
    warnings: tuple[str, ...] = ()
    window_sigma: float | None = None

    @property
    def total(self) -> complex:
        return compensated_sum(list(self.terms.values()))


@dataclass(frozen=True)
class IdentityRequest:
    rho: int
    grid: tuple[float, ...]
    which: IdentityKind
    truncation: EvalBudget = IDENTITY_BUDGET
    flip_lambda4: bool = False
    smoothing: Smoothing = "off"

    def __post_init__(self) -> None:
        assert self.rho >= 0, f"rho must be nonnegative, got {self.rho}"
        assert all(point > 0 for point in self.grid), f"grid points must be positive, got {self.grid}"


@dataclass(frozen=True)
class PointReport:
    point: float
    lhs: complex
    rhs_terms: dict[str, complex]
    rhs_total: complex
    abs_err: float
    rel_err: float
    terms_used: int
    warnings: tuple[str, ...] = ()
    extras: dict[str, complex] = field(default_factory=dict)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and math.isfinite(self.rel_err)


def first_rho_violation(beta: float, weight: int, rho: int) -> str | None:
    """The refusal message when ρ misses the Bessel-series threshold, else None."""
    threshold = 2.0 * beta - weight - 0.5
    if rho < threshold:
        return f"rho >= 2*beta - 2k - 1/2 violated: {rho} < {threshold}"
    return None


def second_rho_violation(beta: float, weight: int, rho: int) -> str | None:
    if rho + weight < beta + 0.5:
        return f"rho + 2k >= beta + 1/2 violated: {rho + weight} < {beta + 0.5}"
    return None


def second_y_bound(lam: float, alphas: Iterable[float]) -> float:
    """Smallest admissible y for the second identity; 0 without pole blocks."""
    bounds = [max(2.0 * math.pi * abs(alpha) / lam, 2.0 * math.pi / (abs(alpha) * lam)) for alpha in alphas]
    return max(bounds, default=0.0)


def second_y_violation(lam: float, alphas: Iterable[float], y: float) -> str | None:
    bound = second_y_bound(lam, alphas)
    if y <= bound:
        return f"y > max(2*pi*alpha/lambda, 2*pi/(alpha*lambda)) violated: {y} <= {bound}"
    return None


def check_first_request(L: CompletedL, rho: int) -> None:
    if message := first_rho_violation(L.series.beta, L.group.weight, rho):
        raise DomainError(message)


def check_second_request(L: CompletedL, rho: int, y: float | None = None) -> None:
    if message := second_rho_violation(L.series.beta, L.group.weight, rho):
        raise DomainError(message)
    if y is None:
        return
    alphas = [block.alpha for block in L.rpf.pole_blocks]
    if message := second_y_violation(L.group.lam, alphas, y):
        raise DomainError(message)
