"""Riesz means Σ' a_m (x - m)^ρ / Γ(ρ+1) and their Bessel-series expansion.

The left side keeps the m = 0 term a₀x^ρ/Γ(ρ+1); on the right it is balanced
by the residue of Φ at s = 0, so the comparison is lhs = Λ₁ + … + Λ₅.

The pointwise Bessel series converges slowly. With smoothing, every Λ term is
averaged over a Gaussian window around x whose low moments vanish; the Riesz
mean is a polynomial of degree ρ between integers, so its average is its value
at x, while the averaged Bessel terms die off like the window's transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
import numpy as np
from loguru import logger
from numpy.polynomial import hermite_e

from hecke_lab.errors import DomainError
from hecke_lab.identities.types import MAX_BESSEL_TERMS, IdentityTerms, Smoothing, check_first_request
from hecke_lab.lseries import CompletedL
from hecke_lab.lseries.completed import ipow
from hecke_lab.specialfn import (
    EvalBudget,
    NeumaierAccumulator,
    bessel_j,
    bessel_j_many,
    compensated_sum,
    hyp1f1,
    rgamma,
)

INTEGER_TOL = 1e-12
_CHECK_EVERY = 64
WINDOW_NODES = 96
# φ(12) ≈ 5e-32; nodes beyond it are dropped
WINDOW_REACH = 12.0
# σ = gap / 9 keeps the neighbouring integers 9σ away
WINDOW_WIDTHS = 9.0
_NEGLIGIBLE_DAMPING = 1e-20
_DAMPING_MARGIN = 0.9


def riesz_lhs(L: CompletedL, x: float, rho: int) -> complex:
    """(1/Γ(ρ+1)) Σ'_{0<=m<=x} a_m (x - m)^ρ; for ρ = 0 a term with m = x counts half."""
    series = L.series
    if x > series.m_max:
        raise DomainError(f"riesz_lhs needs x <= M_max = {series.m_max}, got {x}")
    assert x > 0 and rho >= 0, f"need x > 0 and rho >= 0, got x={x}, rho={rho}"
    values = [series.a0 * x**rho]
    for m in range(1, math.floor(x + INTEGER_TOL) + 1):
        weight = (x - m) ** rho if m < x else 0.0
        if rho == 0 and abs(x - m) <= INTEGER_TOL:
            weight = 0.5
        values.append(series.coefficient(m) * weight)
    return compensated_sum(values) / math.factorial(rho)


def bessel_term_bound(L: CompletedL, x: float, rho: int, m: int) -> float:
    """|a_m (x/m)^{(ρ+2k)/2} J_{ρ+2k}(4π√(mx)/λ)| <= K m^γ (x/m)^{ν/2} sqrt(2/(πt))."""
    series, lam = L.series, L.group.lam
    nu = rho + L.group.weight
    t = 4.0 * math.pi * math.sqrt(m * x) / lam
    return series.growth_constant * m**series.growth_exponent * (x / m) ** (nu / 2) * math.sqrt(2.0 / (math.pi * t))


def lambda1(L: CompletedL, x: float, rho: int, budget: EvalBudget) -> tuple[complex, int]:
    """Λ₁ summed until the per-term bound falls below rel_tol·|partial|; returns the terms used."""
    series, lam, weight = L.series, L.group.lam, L.group.weight
    nu = float(rho + weight)
    limit = min(series.m_max, budget.max_terms, MAX_BESSEL_TERMS)
    scale = (2.0 * math.pi / lam) ** (-rho)
    total = NeumaierAccumulator()
    used = 0
    for m in range(1, limit + 1):
        used = m
        a_m = series.coefficient(m)
        if a_m != 0:
            t = 4.0 * math.pi * math.sqrt(m * x) / lam
            total.add(a_m * (x / m) ** (nu / 2) * bessel_j(nu, t))
        if m % _CHECK_EVERY == 0:
            bound = scale * bessel_term_bound(L, x, rho, m)
            if bound <= budget.rel_tol * max(abs(total.value), budget.abs_floor):
                break
    return ipow(-weight) * scale * total.value, used


@dataclass(frozen=True)
class SmoothingWindow:
    """σ·K(u) around x with K(u) = φ(u) Σ_{j<order} (-1)^j He_{2j}(u) / (2^j j!).

    The moments 1 … 2·order - 1 of K vanish and its transform is
    e^{-a²/2} Σ_{j<order} (a²/2)^j / j!.
    """

    x: float
    sigma: float
    order: int

    @classmethod
    def around(cls, x: float, rho: int) -> SmoothingWindow | None:
        """The window for a Riesz mean of order ρ; None when x sits on an integer."""
        gap = min(abs(x - round(x)), x / 2.0)
        if gap <= INTEGER_TOL:
            return None
        return cls(x, gap / WINDOW_WIDTHS, rho // 2 + 1)

    @cached_property
    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Points x + σu and weights from Gauss–Hermite with the K polynomial folded in."""
        u, w = hermite_e.hermegauss(WINDOW_NODES)
        keep = np.abs(u) <= WINDOW_REACH
        coeffs = np.zeros(2 * self.order - 1)
        for j in range(self.order):
            coeffs[2 * j] = (-1) ** j / (2**j * math.factorial(j))
        weights = w[keep] * hermite_e.hermeval(u[keep], coeffs) / math.sqrt(2.0 * math.pi)
        return self.x + self.sigma * u[keep], weights

    def average(self, values: list[complex]) -> complex:
        _, weights = self.nodes
        return compensated_sum([w * v for w, v in zip(weights, values, strict=True)])

    def damping(self, a: float) -> float:
        s = 0.5 * a * a
        return math.exp(-s) * sum(s**j / math.factorial(j) for j in range(self.order))

    def bessel_frequency(self, L: CompletedL, m: int) -> float:
        """Phase rate of J(4π√(mx')/λ) in units of σ, taken at the window's far edge."""
        edge = self.x + WINDOW_REACH * self.sigma
        return self.sigma * 2.0 * math.pi * math.sqrt(m) / (L.group.lam * math.sqrt(edge))


def lambda1_smoothed(L: CompletedL, window: SmoothingWindow, rho: int, budget: EvalBudget) -> tuple[complex, int]:
    """Window average of Λ₁; the m-th term is bounded by its envelope times the damping at its phase rate."""
    series, lam, weight = L.series, L.group.lam, L.group.weight
    nu = float(rho + weight)
    limit = min(series.m_max, budget.max_terms, MAX_BESSEL_TERMS)
    scale = (2.0 * math.pi / lam) ** (-rho)
    points, weights = window.nodes
    edge = float(points.max())
    total = NeumaierAccumulator()
    used = 0
    for start in range(1, limit + 1, _CHECK_EVERY):
        stop = min(start + _CHECK_EVERY, limit + 1)
        m = np.arange(start, stop, dtype=np.float64)
        t = 4.0 * math.pi * np.sqrt(np.outer(m, points)) / lam
        averaged = ((points[None, :] / m[:, None]) ** (nu / 2) * bessel_j_many(nu, t, budget)) @ weights
        total.add(compensated_sum(series.coeffs[start - 1 : stop - 1] * averaged))
        used = stop - 1
        damping = window.damping(_DAMPING_MARGIN * window.bessel_frequency(L, used))
        bound = scale * bessel_term_bound(L, edge, rho, used) * damping
        if bound <= budget.rel_tol * max(abs(total.value), budget.abs_floor):
            break
    return ipow(-weight) * scale * total.value, used


def choose_window(
    L: CompletedL, x: float, rho: int, budget: EvalBudget, smoothing: Smoothing
) -> tuple[SmoothingWindow | None, str | None]:
    """The window the Λ terms are averaged over (None for the pointwise sum) and a warning, if any.

    auto smooths unless the series is finite or the stored coefficients run out
    before the window damps the Bessel terms.
    """
    if smoothing == "off":
        return None, None
    window = SmoothingWindow.around(x, rho)
    if smoothing == "on":
        if window is None:
            raise DomainError(f"no smoothing window at x={x}: x must not be an integer")
        return window, None
    if window is None or L.series.finite:
        return None, None
    limit = min(L.series.m_max, budget.max_terms, MAX_BESSEL_TERMS)
    if window.damping(_DAMPING_MARGIN * window.bessel_frequency(L, limit)) > _NEGLIGIBLE_DAMPING:
        return None, f"{limit} Bessel terms cannot damp the window at x={x}; Λ1 summed pointwise"
    return window, None


def lambda3(L: CompletedL, x: float, rho: int) -> complex:
    c = 2.0 * math.pi / L.group.lam
    total = NeumaierAccumulator()
    for block in L.rpf.pole_blocks:
        alpha = block.alpha
        for r, coeff in enumerate(block.coeffs, start=1):
            if coeff == 0:
                continue
            prefactor = coeff * (-1.0 / alpha) ** r * (1j * alpha) ** r * c**r * x ** (r + rho) * rgamma(r + rho + 1.0)
            total.add(prefactor * hyp1f1(r, r + rho + 1, -1j * alpha * c * x))
    return -total.value


def lambda4(L: CompletedL, x: float, rho: int, *, flip: bool = False) -> complex:
    """As displayed: ₁F₁(r, 2k+ρ+1; -2πx/(iαλ)); flip replaces the 1/i factor by i."""
    weight = L.group.weight
    c = 2.0 * math.pi / L.group.lam
    inverse_i = 1j if flip else -1j
    shared = ipow(-weight) * c**weight * x ** (weight + rho) * rgamma(weight + rho + 1.0)
    total = NeumaierAccumulator()
    for block in L.rpf.pole_blocks:
        alpha = block.alpha
        for r, coeff in enumerate(block.coeffs, start=1):
            if coeff == 0:
                continue
            argument = -c * x * inverse_i / alpha
            total.add(coeff * (-1.0 / alpha) ** r * shared * hyp1f1(r, weight + rho + 1, argument))
    return total.value


def lambda5(L: CompletedL, x: float, rho: int) -> complex:
    """Residues of E⁰ at s = m and s = 2k - m, weighted by C_m."""
    weight = L.group.weight
    c = 2.0 * math.pi / L.group.lam
    total = NeumaierAccumulator()
    for term in L.rpf.zero_terms:
        m = term.r
        direct = ipow(-m) * c**m * x ** (m + rho) * rgamma(m + rho + 1.0)
        mirror = ipow(weight - m) * c ** (weight - m) * x ** (weight - m + rho) * rgamma(weight - m + rho + 1.0)
        total.add(term.coeff * (direct - mirror))
    return -total.value


def lambda2(L: CompletedL, x: float, rho: int) -> complex:
    weight = L.group.weight
    c = 2.0 * math.pi / L.group.lam
    return L.i_2k * c**weight * L.series.a0 * x ** (weight + rho) * rgamma(weight + rho + 1.0)


def first_rhs_terms(
    L: CompletedL,
    x: float,
    rho: int,
    budget: EvalBudget,
    *,
    flip_lambda4: bool = False,
    smoothing: Smoothing = "off",
) -> IdentityTerms:
    """Λ₁ … Λ₅ at x, or their window averages around x when a window is chosen."""
    check_first_request(L, rho)
    warnings = []
    if flip_lambda4:
        message = "Λ4 evaluated with the 1/i factor flipped to i"
        logger.warning(message)
        warnings.append(message)
    window, fallback = choose_window(L, x, rho, budget, smoothing)
    if fallback is not None:
        logger.warning(fallback)
        warnings.append(fallback)
    if window is None:
        l1, used = lambda1(L, x, rho, budget)
        closed = {
            "L2": lambda2(L, x, rho),
            "L3": lambda3(L, x, rho),
            "L4": lambda4(L, x, rho, flip=flip_lambda4),
            "L5": lambda5(L, x, rho),
        }
    else:
        l1, used = lambda1_smoothed(L, window, rho, budget)
        points = [float(point) for point in window.nodes[0]]
        closed = {
            "L2": window.average([lambda2(L, v, rho) for v in points]),
            "L3": window.average([lambda3(L, v, rho) for v in points]),
            "L4": window.average([lambda4(L, v, rho, flip=flip_lambda4) for v in points]),
            "L5": window.average([lambda5(L, v, rho) for v in points]),
        }
    if used < L.series.m_max and used == min(budget.max_terms, MAX_BESSEL_TERMS):
        message = f"Λ1 at x={x} stopped at the {used}-term budget"
        logger.warning(message)
        warnings.append(message)
    sigma = None if window is None else window.sigma
    logger.debug(f"first identity at x={x}, rho={rho}: {used} Bessel terms, window sigma {sigma}")
    return IdentityTerms({"L1": l1, **closed}, used, tuple(warnings), window_sigma=sigma)


def perron_delta(L: CompletedL, x: float, rho: int) -> complex:
    """Riesz mean without its m = 0 term, the quantity Perron's formula integrates to."""
    return riesz_lhs(L, x, rho) - L.series.a0 * x**rho * rgamma(rho + 1.0)


if __name__ == "__main__":
    from hecke_lab.automorphic import coeffs_eisenstein
    from hecke_lab.hecke_rpf import HeckeGroup
    from hecke_lab.specialfn import DEFAULT_BUDGET

    e4 = CompletedL(HeckeGroup.from_p(3, 2), coeffs_eisenstein(4, 5000))
    rhs = first_rhs_terms(e4, 5.5, 5, DEFAULT_BUDGET)
    print(f"lhs = {riesz_lhs(e4, 5.5, 5)}, rhs = {rhs.total} ({rhs.terms_used} Bessel terms)")
