"""The exponential-sum identity: (-1/y d/dy)^ρ ((1/y) Σ a_m e^{-y√m}) against its resolvent expansion.

Both sides come from the Mellin kernel 2^ρ (8π/(λy²))^s Γ(s+ρ+½) / (√π y^{2ρ+1})
applied to Φ(s). Residues at s = 0 and s = 2k give a0term and extra, the zero
terms give gammapair, the pole blocks give the two Ψ groups, and the mirrored
line integral expands into the resolvent series over m >= 1.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np
from loguru import logger

from hecke_lab.errors import TruncationError
from hecke_lab.identities.types import IdentityTerms, check_second_request
from hecke_lab.lseries import CompletedL
from hecke_lab.specialfn import DEFAULT_BUDGET, EvalBudget, NeumaierAccumulator, compensated_sum, gamma, tricomi_u

CANCELLATION_RATIO = 1e-6
EXTENDED_DPS = 40


def operator_polynomials(root_m: np.ndarray, rho: int) -> np.ndarray:
    """Coefficients b_j (rows) with (-1/y d/dy)^ρ (e^{-y√m}/y) = e^{-y√m} Σ_j b_j y^{-j}.

    One application sends b_j y^{-j} to √m b_j y^{-j-1} + j b_j y^{-j-2}.
    """
    poly = np.zeros((2 * rho + 2, root_m.size), dtype=np.float64)
    poly[1] = 1.0
    for _ in range(rho):
        step = np.zeros_like(poly)
        for j in range(1, poly.shape[0] - 2):
            step[j + 1] += root_m * poly[j]
            step[j + 2] += j * poly[j]
        poly = step
    return poly


def _tail_bound(L: CompletedL, y: float, rho: int, edge_poly: float) -> float:
    """Bound for the terms m > M_max, from |a_m| <= K m^γ and P_m <= P_M (m/M)^{ρ/2}."""
    series = L.series
    if series.tail_constant == 0.0:
        return 0.0
    v0 = math.sqrt(series.m_max)
    n = 2.0 * series.growth_exponent + 1.0 + rho
    if y <= n / v0:
        return math.inf
    log_edge = n * math.log(v0) - y * v0 - math.log(y - n / v0)
    return 2.0 * series.tail_constant * edge_poly * v0 ** (-rho) * math.exp(log_edge)


def second_lhs(L: CompletedL, y: float, rho: int, budget: EvalBudget = DEFAULT_BUDGET) -> complex:
    """Closed-form termwise action of (-1/y d/dy)^ρ on (1/y) Σ_{m>=1} a_m e^{-y√m}."""
    assert y > 0 and rho >= 0, f"need y > 0 and rho >= 0, got y={y}, rho={rho}"
    series = L.series
    if not np.any(series.coeffs):
        return 0j
    root_m = np.sqrt(np.arange(1, series.m_max + 1, dtype=np.float64))
    poly = operator_polynomials(root_m, rho)
    powers = y ** -np.arange(poly.shape[0], dtype=np.float64)
    values = powers @ poly
    terms = series.coeffs * np.exp(-y * root_m) * values
    total = compensated_sum(terms)
    magnitude = float(np.sum(np.abs(terms)))
    if abs(total) < CANCELLATION_RATIO * magnitude:
        logger.debug(f"second_lhs at y={y}: cancellation {abs(total):.2e} vs {magnitude:.2e}, using mpmath")
        total = _second_lhs_extended(L, y, rho)

    tail = _tail_bound(L, y, rho, float(values[-1]))
    if tail > budget.rel_tol * max(abs(total), budget.abs_floor):
        raise TruncationError(
            f"second_lhs tail {tail:.2e} at y={y} not certifiable with {series.m_max} coefficients of {series.label}"
        )
    return total


def _second_lhs_extended(L: CompletedL, y: float, rho: int) -> complex:
    """Same closed form in mpmath, fed the exact integer coefficients when the series has them."""
    series = L.series
    with mpmath.workdps(EXTENDED_DPS):
        # τ(m) exceeds 2^53, so the float copy is not exact
        if series.exact is not None:
            values = [(index, mpmath.mpf(a)) for index, a in enumerate(series.exact) if a]
        else:
            nonzero = np.flatnonzero(series.coeffs)
            values = [(int(i), mpmath.mpc(series.coeffs[i].real, series.coeffs[i].imag)) for i in nonzero]
        inverse = 1 / mpmath.mpf(y)
        total = mpmath.mpc(0)
        for index, a in values:
            root = mpmath.sqrt(index + 1)
            poly = [mpmath.mpf(0)] * (2 * rho + 2)
            poly[1] = mpmath.mpf(1)
            for _ in range(rho):
                step = [mpmath.mpf(0)] * len(poly)
                for j in range(1, len(poly) - 2):
                    step[j + 1] += root * poly[j]
                    step[j + 2] += j * poly[j]
                poly = step
            value = mpmath.fsum(b * inverse**j for j, b in enumerate(poly))
            total += a * mpmath.exp(-root / inverse) * value
        return complex(total)


def _kernel_prefactor(y: float, rho: int) -> float:
    return 2.0**rho / (math.sqrt(math.pi) * y ** (2 * rho + 1))


def a0_term(L: CompletedL, y: float, rho: int) -> complex:
    """Residue at s = 0: -2^ρ a₀ Γ(ρ+½) / (√π y^{2ρ+1})."""
    return -_kernel_prefactor(y, rho) * L.series.a0 * gamma(rho + 0.5)


def extra_term(L: CompletedL, y: float, rho: int) -> complex:
    """Residue at s = 2k: 2^ρ a₀ (8πi/(λy²))^{2k} Γ(2k+ρ+½) / (√π y^{2ρ+1})."""
    weight = L.group.weight
    scale = 8.0 * math.pi / (L.group.lam * y * y)
    return _kernel_prefactor(y, rho) * L.series.a0 * L.i_2k * scale**weight * gamma(weight + rho + 0.5)


def resolvent_term(L: CompletedL, y: float, rho: int, budget: EvalBudget = DEFAULT_BUDGET) -> tuple[complex, int]:
    """i^{2k} 2^{4k+ρ} Γ(A) (2π/λ)^{2k}/√π Σ_{m>=1} a_m (y² + 4(2π/λ)²m)^{-A}, A = 2k+ρ+½."""
    series, weight = L.series, L.group.weight
    if not np.any(series.coeffs):
        return 0j, 0
    c = 2.0 * math.pi / L.group.lam
    exponent = weight + rho + 0.5
    m = np.arange(1, series.m_max + 1, dtype=np.float64)
    base = y * y + 4.0 * c * c * m
    # scale out the first denominator so the powers stay representable
    ratios = np.exp(-exponent * np.log(base / base[0]))
    partial = compensated_sum(series.coeffs * ratios)
    decay = exponent - series.growth_exponent - 1.0
    assert decay > 0, f"resolvent series needs 2k+rho+1/2 > beta + 3/4, got {exponent}"
    tail = series.tail_constant * (4.0 * c * c / base[0]) ** (-exponent) * series.m_max ** (-decay) / decay
    if tail > budget.rel_tol * max(abs(partial), budget.abs_floor):
        logger.debug(f"resolvent at y={y}: power-law tail {tail:.2e} against partial {abs(partial):.2e}")
    log_prefactor = (
        (2 * weight + rho) * math.log(2.0) + weight * math.log(c) + math.lgamma(exponent) - 0.5 * math.log(math.pi)
    )
    scale = math.exp(log_prefactor - exponent * math.log(base[0]))
    return L.i_2k * scale * partial, series.m_max


def gammapair_term(L: CompletedL, y: float, rho: int) -> tuple[complex, list[str]]:
    """Residues of E⁰ against the kernel: 2^ρ/(√π y^{2ρ+1}) Σ C_m {(8πi/(λy²))^{2k-m}Γ(2k-m+ρ+½) - (-8πi/(λy²))^m Γ(m+ρ+½)}."""
    weight = L.group.weight
    z = 8j * math.pi / (L.group.lam * y * y)
    warnings = []
    total = NeumaierAccumulator()
    for term in L.rpf.zero_terms:
        m = term.r
        if m >= weight + rho + 0.5:
            message = f"zero term r={m} reaches the Γ(s+ρ+½) poles; gammapair omits their residues"
            logger.warning(message)
            warnings.append(message)
        total.add(term.coeff * (z ** (weight - m) * gamma(weight - m + rho + 0.5) - (-z) ** m * gamma(m + rho + 0.5)))
    return _kernel_prefactor(y, rho) * total.value, warnings


def psi1_term(L: CompletedL, y: float, rho: int, budget: EvalBudget = DEFAULT_BUDGET) -> complex:
    """-2^ρ/(√π y^{2ρ+1}) ΣΣ C (-1/α)^r Γ(r+ρ+½) Ψ(r, ½-ρ; λy²/(8πiα))."""
    lam = L.group.lam
    total = NeumaierAccumulator()
    for block in L.rpf.pole_blocks:
        argument = lam * y * y / (8j * math.pi * block.alpha)
        for r, coeff in enumerate(block.coeffs, start=1):
            if coeff == 0:
                continue
            psi = tricomi_u(r, 0.5 - rho, argument, budget)
            total.add(coeff * (-1.0 / block.alpha) ** r * gamma(r + rho + 0.5) * psi)
    return -_kernel_prefactor(y, rho) * total.value


def psi2_term(L: CompletedL, y: float, rho: int, budget: EvalBudget = DEFAULT_BUDGET) -> complex:
    """2^ρ/(√π y^{2ρ+1}) ΣΣ_{r<=min(M,k)} C (-1/α)^r α^{2k} Γ(2k+ρ+½) w^{r-2k} Ψ(r, r-2k-ρ+½; w), w = iαλy²/(8π)."""
    k, weight, lam = L.k, L.group.weight, L.group.lam
    total = NeumaierAccumulator()
    for block in L.rpf.pole_blocks:
        w = 1j * block.alpha * lam * y * y / (8.0 * math.pi)
        for r, coeff in enumerate(block.coeffs[:k], start=1):
            if coeff == 0:
                continue
            psi = tricomi_u(r, r - weight - rho + 0.5, w, budget)
            scale = (-1.0 / block.alpha) ** r * block.alpha**weight * w ** (r - weight)
            total.add(coeff * scale * gamma(weight + rho + 0.5) * psi)
    return _kernel_prefactor(y, rho) * total.value


def second_rhs_terms(L: CompletedL, y: float, rho: int, budget: EvalBudget = DEFAULT_BUDGET) -> IdentityTerms:
    """The six right-hand groups at y."""
    check_second_request(L, rho, y)
    resolvent, used = resolvent_term(L, y, rho, budget)
    gammapair, warnings = gammapair_term(L, y, rho)
    terms = {
        "a0term": a0_term(L, y, rho),
        "resolvent": resolvent,
        "psi1": psi1_term(L, y, rho, budget),
        "psi2": psi2_term(L, y, rho, budget),
        "gammapair": gammapair,
        "extra": extra_term(L, y, rho),
    }
    return IdentityTerms(terms, used, tuple(warnings))


if __name__ == "__main__":
    from hecke_lab.automorphic import coeffs_delta
    from hecke_lab.hecke_rpf import HeckeGroup

    delta = CompletedL(HeckeGroup.from_p(3, 6), coeffs_delta(2000))
    print(f"lhs = {second_lhs(delta, 2.0, 1)}, rhs = {second_rhs_terms(delta, 2.0, 1).total}")
