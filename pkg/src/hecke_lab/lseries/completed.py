"""The completed series Φ(s) = (2π/λ)^{-s} Γ(s) φ(s) and its continuation.

Φ = D + D⁰ + E⁰ + E^H + E^B where D is the entire Mellin integral over [1, ∞)
and the other four pieces are closed forms built from a₀ and the rational
period function. Each piece checks its own poles against the exclusion radius.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from loguru import logger
from scipy import special

from hecke_lab.automorphic import CoefficientSeries, eval_F, geometric_tail
from hecke_lab.errors import BudgetExhaustedError, DomainError, PoleError
from hecke_lab.hecke_rpf import EMPTY_RPF, HeckeGroup, PoleBlock, RationalPeriodFunction, validate_rpf
from hecke_lab.specialfn import DEFAULT_BUDGET, EvalBudget, beta_fn, compensated_sum, gamma, hyp2f1
from hecke_lab.specialfn.quadrature import complex_quad

DELTA_OFFSET = 1.55
_HYP_BUDGET = EvalBudget(max_terms=50_000)
_Y_MAX_CAP = 1e4


def ipow(n: int) -> complex:
    """iⁿ for integer n, exact."""
    return (1, 1j, -1, -1j)[n % 4]


@dataclass(frozen=True)
class ContinuationConfig:
    delta_strip: float
    quad_abs_tol: float = 1e-13
    quad_rel_tol: float = 1e-12
    quad_y_max: float | None = None
    pole_exclusion_radius: float = 1e-3
    quad_limit: int = 200

    def __post_init__(self) -> None:
        assert self.quad_abs_tol > 0 and self.quad_rel_tol > 0, "quadrature tolerances must be positive"
        assert self.quad_y_max is None or self.quad_y_max > 1, f"quad_y_max must exceed 1, got {self.quad_y_max}"
        assert self.pole_exclusion_radius > 0, "pole_exclusion_radius must be positive"

    @property
    def floor_delta(self) -> int:
        return math.floor(self.delta_strip)


def default_continuation(series: CoefficientSeries, group: HeckeGroup) -> ContinuationConfig:
    """δ = max(β, 2k) + 1.55."""
    return ContinuationConfig(delta_strip=max(series.beta, group.weight) + DELTA_OFFSET)


@dataclass(frozen=True, eq=False)
class CompletedL:
    group: HeckeGroup
    series: CoefficientSeries
    rpf: RationalPeriodFunction = EMPTY_RPF
    config: ContinuationConfig = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.config is None:
            object.__setattr__(self, "config", default_continuation(self.series, self.group))
        validate_rpf(self.rpf, self.group)
        delta, weight = self.config.delta_strip, self.group.weight
        if delta <= weight:
            raise DomainError(f"delta_strip > 2k violated: {delta} <= {weight}")
        if delta < self.series.beta:
            raise DomainError(f"delta_strip >= beta violated: {delta} < {self.series.beta}")
        if abs(delta - round(delta)) < 1e-3:
            raise DomainError(f"delta_strip must stay 1e-3 away from an integer, got {delta}")
        for block in self.rpf.pole_blocks:
            if block.size > self.group.k:
                logger.warning(
                    f"pole block alpha={block.alpha} has M={block.size} > k={self.group.k}; "
                    f"E^B keeps r <= {self.group.k} only"
                )

    @property
    def k(self) -> int:
        return self.group.k

    @property
    def i_2k(self) -> int:
        return self.group.i_2k

    @cached_property
    def cusp_series(self) -> CoefficientSeries:
        """F - a₀ as a series of its own, so its relative tolerance is not swamped by a₀."""
        return self.series.without_a0()

    @cached_property
    def cusp_envelope(self) -> float:
        """A with |F(iy) - a₀| <= A e^{-2πy/λ} for y >= 1."""
        c = 2.0 * math.pi / self.group.lam
        m = np.arange(self.series.m_max, dtype=np.float64)
        stored = float(np.sum(np.abs(self.series.coeffs) * np.exp(-c * m)))
        tail = geometric_tail(self.series.tail_constant, self.series.growth_exponent, math.exp(-c), self.series.m_max)
        return stored + math.exp(c) * tail


def phi_dirichlet(L: CompletedL, s: complex) -> complex:
    """(2π/λ)^{-s} Γ(s) Σ_{m<=M} a_m m^{-s}; needs Re s > β + 1."""
    s = complex(s)
    series = L.series
    if s.real <= series.beta + 1.0:
        raise DomainError(f"phi_dirichlet needs Re s > beta + 1 = {series.beta + 1.0}, got {s}")
    if not np.any(series.coeffs):
        return 0j
    m = np.arange(1, series.m_max + 1, dtype=np.float64)
    total = compensated_sum(series.coeffs * np.exp(-s * np.log(m)))
    excess = s.real - series.growth_exponent - 1.0
    tail = series.tail_constant * series.m_max ** (-excess) / excess
    logger.debug(f"phi_dirichlet({s}): {series.m_max} terms, integral-test tail <= {tail:.2e}")
    return cmath.exp(-s * math.log(2.0 * math.pi / L.group.lam)) * gamma(s) * total


def _incomplete_moment(power: float, rate: float, start: float) -> float:
    """Upper bound for ∫_start^∞ y^{power-1} e^{-rate·y} dy."""
    if power > 0:
        return float(special.gammaincc(power, rate * start) * special.gamma(power)) / rate**power
    return start ** (power - 1) * math.exp(-rate * start) / rate


def d_cutoff(L: CompletedL, s: complex) -> float:
    """Upper limit y_max with the dropped part of the D integral below quad_abs_tol/100."""
    config = L.config
    if config.quad_y_max is not None:
        return config.quad_y_max
    rate = 2.0 * math.pi / L.group.lam
    target = config.quad_abs_tol * 1e-2
    powers = (s.real, L.group.weight - s.real)
    y = 2.0
    while y < _Y_MAX_CAP:
        bound = L.cusp_envelope * sum(_incomplete_moment(p, rate, y) for p in powers)
        if bound <= target:
            return y
        y *= 1.2
    raise BudgetExhaustedError(f"no D-integral cutoff below {_Y_MAX_CAP} for s = {s}")


def D_integral(L: CompletedL, s: complex, budget: EvalBudget = DEFAULT_BUDGET) -> complex:
    """∫₁^∞ (F(iy) - a₀)(y^s + i^{2k} y^{2k-s}) dy/y, entire in s."""
    s = complex(s)
    if not np.any(L.series.coeffs):
        return 0j
    weight, sign = L.group.weight, L.i_2k
    cusp = L.cusp_series

    def integrand(y: float) -> complex:
        return eval_F(cusp, L.group, 1j * y, budget) * (y ** (s - 1.0) + sign * y ** (weight - s - 1.0))

    y_max = d_cutoff(L, s)
    result = complex_quad(
        integrand,
        1.0,
        y_max,
        epsabs=L.config.quad_abs_tol,
        epsrel=L.config.quad_rel_tol,
        limit=L.config.quad_limit,
    )
    logger.debug(f"D({s}) on [1, {y_max:.3g}] = {result.value} ± {result.error:.1e}")
    return result.value


def _check_poles(L: CompletedL, s: complex, poles: list[float], piece: str) -> None:
    radius = L.config.pole_exclusion_radius
    for pole in poles:
        if abs(s - pole) < radius:
            raise PoleError(f"{piece} has a pole at s = {pole}; got s = {s}")


def _integer_pole(L: CompletedL, s: complex, piece: str, *, at_most: int | None = None, at_least: int | None = None) -> None:
    """Raise when s is near an integer n with n <= at_most or n >= at_least."""
    nearest = round(s.real)
    if abs(s - nearest) >= L.config.pole_exclusion_radius:
        return
    if (at_most is not None and nearest <= at_most) or (at_least is not None and nearest >= at_least):
        raise PoleError(f"{piece} has a pole at s = {nearest}; got s = {s}")


def D0(L: CompletedL, s: complex) -> complex:
    """-a₀(1/s - i^{2k}/(s - 2k))."""
    s = complex(s)
    a0 = L.series.a0
    if a0 == 0:
        return 0j
    _check_poles(L, s, [0.0, float(L.group.weight)], "D0")
    return -a0 * (1.0 / s - L.i_2k / (s - L.group.weight))


def E0(L: CompletedL, s: complex) -> complex:
    """Σ_{k<=r<=L} C_r (-i)^r [1/(r - s) + i^{2k}/(r - 2k + s)]."""
    s = complex(s)
    terms = L.rpf.zero_terms
    if not terms:
        return 0j
    weight = L.group.weight
    _check_poles(L, s, [p for t in terms for p in (float(t.r), float(weight - t.r))], "E0")
    return sum(
        (t.coeff * ipow(-t.r) * (1.0 / (t.r - s) + L.i_2k / (t.r - weight + s)) for t in terms),
        0j,
    )


def _block_nome(block: PoleBlock) -> complex:
    return 1.0 / (1j * block.alpha + 1.0)


def EH(L: CompletedL, s: complex) -> complex:
    """The ₂F₁ piece; poles at s = 0, -1, -2, … and their mirrors 2k, 2k+1, …."""
    s = complex(s)
    blocks = L.rpf.pole_blocks
    if not blocks:
        return 0j
    weight = L.group.weight
    _integer_pole(L, s, "EH", at_most=0, at_least=weight)
    total = 0j
    for block in blocks:
        w = _block_nome(block)
        for r, coeff in enumerate(block.coeffs, start=1):
            if coeff == 0:
                continue
            bracket = hyp2f1(1, r, 1.0 + s, w, _HYP_BUDGET) / s
            bracket += L.i_2k * hyp2f1(1, r, 1.0 + (weight - s), w, _HYP_BUDGET) / (weight - s)
            total += coeff * ipow(-r) * w**r * bracket
    return -total


def EB(L: CompletedL, s: complex) -> complex:
    """i^{2k} ΣΣ_{r<=min(M_j,k)} C_{rj} (-1/α_j)^r B(2k-s, r-2k+s) (iα_j)^{2k-s}, principal branch."""
    s = complex(s)
    blocks = L.rpf.pole_blocks
    if not blocks:
        return 0j
    k, weight = L.k, L.group.weight
    total = 0j
    for block in blocks:
        log_ia = cmath.log(1j * block.alpha)
        power = cmath.exp((weight - s) * log_ia)
        for r, coeff in enumerate(block.coeffs[:k], start=1):
            if coeff == 0:
                continue
            _integer_pole(L, s, "EB", at_most=weight - r, at_least=weight)
            total += coeff * (-1.0 / block.alpha) ** r * beta_fn(weight - s, r - weight + s) * power
    return L.i_2k * total


def phi_continued(L: CompletedL, s: complex, budget: EvalBudget = DEFAULT_BUDGET) -> complex:
    """D + D⁰ + E⁰ + E^H + E^B."""
    s = complex(s)
    pieces = (D_integral(L, s, budget), D0(L, s), E0(L, s), EH(L, s), EB(L, s))
    return compensated_sum(pieces)


def R_of(L: CompletedL, s: complex) -> complex:
    """R(s) = E^B(2k - s) - i^{2k} E^B(s), cross-checked against the closed form when every α > 0."""
    s = complex(s)
    value = EB(L, L.group.weight - s) - L.i_2k * EB(L, s)
    blocks = L.rpf.pole_blocks
    if not blocks:
        return value
    if all(block.alpha > 0 for block in blocks):
        closed = R_closed_form(L, s)
        assert abs(closed - value) <= 1e-8 * (1.0 + abs(value)), f"R({s}) closed form {closed} != {value}"
    else:
        logger.debug(f"R({s}): negative alpha, closed form differs by the branch factor e^(-2πis)")
    return value


def R_closed_form(L: CompletedL, s: complex) -> complex:
    """i^{2k} ΣΣ C(-1/α)^r {(iα)^s B(s, r-s) - i^{-s} α^{2k-s} B(2k-s, r-2k+s)}."""
    s = complex(s)
    k, weight = L.k, L.group.weight
    total = 0j
    for block in L.rpf.pole_blocks:
        alpha = complex(block.alpha)
        first = cmath.exp(s * cmath.log(1j * alpha))
        second = cmath.exp(-s * cmath.log(1j)) * cmath.exp((weight - s) * cmath.log(alpha))
        for r, coeff in enumerate(block.coeffs[:k], start=1):
            if coeff == 0:
                continue
            scale = coeff * (-1.0 / block.alpha) ** r
            total += scale * (first * beta_fn(s, r - s) - second * beta_fn(weight - s, r - weight + s))
    return L.i_2k * total


def fe_residual(L: CompletedL, s: complex, budget: EvalBudget = DEFAULT_BUDGET) -> float:
    """|Φ(2k - s) - i^{2k}Φ(s) - R(s)| / (1 + |Φ(s)|)."""
    s = complex(s)
    value = phi_continued(L, s, budget)
    mirrored = phi_continued(L, L.group.weight - s, budget)
    return abs(mirrored - L.i_2k * value - R_of(L, s)) / (1.0 + abs(value))


if __name__ == "__main__":
    from hecke_lab.automorphic import coeffs_eisenstein

    e4 = CompletedL(HeckeGroup.from_p(3, 2), coeffs_eisenstein(4, 2000))
    print(f"Φ(6) continued = {phi_continued(e4, 6)}")
    print(f"Φ(6) Dirichlet = {phi_dirichlet(e4, 6)}")
    print(f"FE residual at 1+2i: {fe_residual(e4, 1 + 2j):.2e}")
