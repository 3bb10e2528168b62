"""Numeric checks of the integral transforms behind both identities.

Each selector pairs a closed form with an independent quadrature of its
defining integral: adaptive QUADPACK for the Laplace-type kernels (L2, L5, L6,
I2) and a trapezoid rule on a vertical line for the Mellin–Barnes kernels
(Q1, Q2). Parameters pin one component (`m`, or `r` and `alpha`) or, when
absent, the check aggregates over the series coefficients or the pole blocks.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Callable, Mapping
from typing import Literal, NamedTuple

import numpy as np
from loguru import logger
from scipy import special

from hecke_lab.errors import DomainError
from hecke_lab.lseries import CompletedL
from hecke_lab.lseries.completed import ipow
from hecke_lab.specialfn import bessel_j, gamma, hyp1f1, rgamma, tricomi_u
from hecke_lab.specialfn.quadrature import complex_quad, line_trapezoid

KernelSelector = Literal["L2", "L5", "L6", "Q1", "Q2", "I2"]
KERNEL_SELECTORS: tuple[KernelSelector, ...] = ("L2", "L5", "L6", "Q1", "Q2", "I2")
MB_HALF_HEIGHT = 40.0
MB_STEP = 0.02
DEFAULT_L2_TERMS = 8
_LAPLACE_DROP = 40.0


class KernelCheck(NamedTuple):
    selector: KernelSelector
    closed: complex
    quadrature: complex
    rel_err: float
    components: int


class _Component(NamedTuple):
    weight: complex
    r: int
    alpha: float


def _laplace_cutoff(power: float, rate: float) -> float:
    """x beyond the peak of x^power e^{-rate x} where it has dropped by e^{-40}."""
    peak = max(power / rate, 1.0 / rate)
    floor_log = power * math.log(peak) - rate * peak - _LAPLACE_DROP if power > 0 else -_LAPLACE_DROP
    x = 2.0 * peak
    while power * math.log(x) - rate * x > floor_log:
        x *= 1.25
    return x


def _laplace_quad(L: CompletedL, func: Callable[[float], complex], upper: float) -> complex:
    """∫_0^upper func in unit-width pieces so oscillatory integrands stay within the quad limit."""
    edges = np.linspace(0.0, upper, max(2, math.ceil(upper) + 1))
    config = L.config
    total = 0j
    for a, b in zip(edges[:-1], edges[1:], strict=True):
        total += complex_quad(
            func, float(a), float(b), epsabs=config.quad_abs_tol, epsrel=config.quad_rel_tol, limit=config.quad_limit
        ).value
    return total


def _rpf_components(L: CompletedL, params: Mapping[str, float], *, r_max: int | None = None) -> list[_Component]:
    if "r" in params or "alpha" in params:
        alpha = float(params.get("alpha", L.rpf.pole_blocks[0].alpha if L.rpf.pole_blocks else 1.0))
        if alpha == 0:
            raise DomainError("kernel parameter alpha must be nonzero")
        return [_Component(1.0, int(params.get("r", 1)), alpha)]
    components = []
    for block in L.rpf.pole_blocks:
        coeffs = block.coeffs if r_max is None else block.coeffs[:r_max]
        components.extend(_Component(c, r, block.alpha) for r, c in enumerate(coeffs, start=1) if c != 0)
    return components


def _series_components(L: CompletedL, params: Mapping[str, float]) -> list[tuple[complex, int]]:
    if "m" in params:
        return [(1.0, int(params["m"]))]
    count = min(L.series.m_max, int(params.get("terms", DEFAULT_L2_TERMS)))
    return [(L.series.coefficient(m), m) for m in range(1, count + 1) if L.series.coefficient(m) != 0]


def _kernel_l2(L: CompletedL, y: float, rho: int, params: Mapping[str, float]) -> tuple[complex, complex, int]:
    """∫_0^∞ i^{-2k}(2π/λ)^{-ρ}(x/m)^{ν/2} J_ν(4π√(mx)/λ) y^{ρ+1} e^{-xy} dx = i^{-2k}(2π/(λy))^{2k} e^{-4π²m/(λ²y)}."""
    weight, lam = L.group.weight, L.group.lam
    nu = float(rho + weight)
    c = 2.0 * math.pi / lam
    sign = ipow(-weight)
    components = _series_components(L, params)
    closed = quad = 0j
    for a_m, m in components:
        closed += a_m * sign * (c / y) ** weight * math.exp(-c * c * m / y)

        def integrand(x: float, m: int = m) -> complex:
            if x == 0.0:
                return 0j
            return sign * c ** (-rho) * (x / m) ** (nu / 2) * bessel_j(nu, 2.0 * c * math.sqrt(m * x)) * y ** (rho + 1) * math.exp(-x * y)

        quad += a_m * _laplace_quad(L, integrand, _laplace_cutoff(nu / 2, y))
    return closed, quad, len(components)


def _kernel_l5(L: CompletedL, y: float, rho: int, params: Mapping[str, float]) -> tuple[complex, complex, int]:
    """∫_0^∞ ₁F₁(r, ρ+r+1; -2πiαx/λ) x^{ρ+r} y^{ρ+1} e^{-xy}/Γ(r+ρ+1) dx = y^{-r}(1 + 2πiα/(λy))^{-r}."""
    lam = L.group.lam
    components = _rpf_components(L, params)
    closed = quad = 0j
    for weight, r, alpha in components:
        if lam * y <= 2.0 * math.pi * abs(alpha):
            raise DomainError(f"L5 needs lambda*y > 2*pi*alpha: {lam * y} <= {2.0 * math.pi * abs(alpha)}")
        argument = -2j * math.pi * alpha / lam
        closed += weight * y ** (-r) * (1.0 + 2j * math.pi * alpha / (lam * y)) ** (-r)
        norm = rgamma(r + rho + 1.0)

        def integrand(x: float, r: int = r, argument: complex = argument, norm: complex = norm) -> complex:
            return hyp1f1(r, rho + r + 1, argument * x) * x ** (rho + r) * y ** (rho + 1) * math.exp(-x * y) * norm

        quad += weight * _laplace_quad(L, integrand, _laplace_cutoff(rho + r, y))
    return closed, quad, len(components)


def _kernel_l6(L: CompletedL, y: float, rho: int, params: Mapping[str, float]) -> tuple[complex, complex, int]:
    """∫_0^∞ ₁F₁(r, 2k+ρ+1; -2πx/(iαλ)) x^{2k+ρ} y^{ρ+1} e^{-xy}/Γ(2k+ρ+1) dx = y^{-2k}(1 + 2π/(iλyα))^{-r}."""
    lam, weight_2k = L.group.lam, L.group.weight
    components = _rpf_components(L, params)
    closed = quad = 0j
    norm = rgamma(weight_2k + rho + 1.0)
    for weight, r, alpha in components:
        if y <= 2.0 * math.pi / (lam * abs(alpha)):
            raise DomainError(f"L6 needs y > 2*pi/(lambda*alpha): {y} <= {2.0 * math.pi / (lam * abs(alpha))}")
        argument = -2.0 * math.pi / (1j * alpha * lam)
        closed += weight * y ** (-weight_2k) * (1.0 + 2.0 * math.pi / (1j * lam * y * alpha)) ** (-r)

        def integrand(x: float, r: int = r, argument: complex = argument) -> complex:
            return hyp1f1(r, weight_2k + rho + 1, argument * x) * x ** (weight_2k + rho) * y ** (rho + 1) * math.exp(-x * y) * norm

        quad += weight * _laplace_quad(L, integrand, _laplace_cutoff(weight_2k + rho, y))
    return closed, quad, len(components)


def _contour(L: CompletedL, params: Mapping[str, float]) -> float:
    return L.group.weight - float(params.get("delta", L.config.delta_strip))


def _barnes_line(log_integrand: Callable[[np.ndarray], np.ndarray], c: float) -> complex:
    return line_trapezoid(lambda s: np.exp(log_integrand(s)), c, MB_HALF_HEIGHT, MB_STEP)


def _kernel_q1(L: CompletedL, y: float, rho: int, params: Mapping[str, float]) -> tuple[complex, complex, int]:
    """(1/2πi)∫_{(c)} Γ(s)Γ(r-s)Γ(s+ρ+½) z^s/Γ(r) ds with z = 8πiα/(λy²), c = 2k - δ.

    Closed form: Γ(r+ρ+½)Ψ(r, ½-ρ; 1/z) minus the residues at s = 0, -1, …, -floor(-c).
    """
    lam = L.group.lam
    c = _contour(L, params)
    components = _rpf_components(L, params)
    closed = quad = 0j
    for weight, r, alpha in components:
        if not -rho - 0.5 < c < r or abs(c - round(c)) < L.config.pole_exclusion_radius:
            raise DomainError(f"Q1 needs -rho - 1/2 < c < r with c off the integers, got c = {c}")
        z = 8j * math.pi * alpha / (lam * y * y)
        value = gamma(r + rho + 0.5) * tricomi_u(r, 0.5 - rho, 1.0 / z)
        for m in range(math.floor(-c) + 1):
            value -= z ** (-m) * (-1) ** m / math.factorial(m) * gamma(m + r) / gamma(r) * gamma(rho - m + 0.5)
        closed += weight * value
        log_z = cmath.log(z)

        def log_integrand(s: np.ndarray, r: int = r, log_z: complex = log_z) -> np.ndarray:
            return (
                special.loggamma(s) + special.loggamma(r - s) + special.loggamma(s + rho + 0.5) - math.lgamma(r) + s * log_z
            )

        quad += weight * _barnes_line(log_integrand, c)
    return closed, quad, len(components)


def _kernel_q2(L: CompletedL, y: float, rho: int, params: Mapping[str, float]) -> tuple[complex, complex, int]:
    """(1/2πi)∫_{(c)} Γ(s+ρ+½)Γ(2k-s)Γ(s+r-2k) z^s/Γ(r) ds with z = 8π/(iλy²α).

    Closed form: Γ(2k+ρ+½) w^{r-2k} Ψ(r, r-2k-ρ+½; w), w = 1/z, minus the residues
    at s = 2k - r - m lying to the right of c.
    """
    lam, weight_2k = L.group.lam, L.group.weight
    c = _contour(L, params)
    components = _rpf_components(L, params, r_max=L.k)
    closed = quad = 0j
    for weight, r, alpha in components:
        if not -rho - 0.5 < c < weight_2k or abs(c - round(c)) < L.config.pole_exclusion_radius:
            raise DomainError(f"Q2 needs -rho - 1/2 < c < 2k with c off the integers, got c = {c}")
        z = 8.0 * math.pi / (1j * lam * y * y * alpha)
        w = 1.0 / z
        value = gamma(weight_2k + rho + 0.5) * w ** (r - weight_2k) * tricomi_u(r, r - weight_2k - rho + 0.5, w)
        for m in range(math.floor(weight_2k - r - c) + 1):
            residue = z ** (weight_2k - m - r) * (-1) ** m / math.factorial(m) * gamma(m + r) / gamma(r)
            value -= residue * gamma(weight_2k - m - r + rho + 0.5)
        closed += weight * value
        log_z = cmath.log(z)

        def log_integrand(s: np.ndarray, r: int = r, log_z: complex = log_z) -> np.ndarray:
            return (
                special.loggamma(s + rho + 0.5)
                + special.loggamma(weight_2k - s)
                + special.loggamma(s + r - weight_2k)
                - math.lgamma(r)
                + s * log_z
            )

        quad += weight * _barnes_line(log_integrand, c)
    return closed, quad, len(components)


def _kernel_i2(L: CompletedL, y: float, rho: int, params: Mapping[str, float]) -> tuple[complex, complex, int]:
    """∫_0^∞ e^{-yu} h(u²) du = y^{-2ρ-1} (c₀y²)^{r-2k} Ψ(r, r-2k-ρ+½; c₀y²), c₀ = iαλ/(8π), where

    h(x) = √π c₀^{-2k} x^{2k+ρ} ₁F₁(r, 2k+ρ+1; -2πx/(iαλ)) / (2^{4k+2ρ} Γ(2k+ρ+½) Γ(2k+ρ+1)).
    """
    lam, weight_2k = L.group.lam, L.group.weight
    n = weight_2k + rho
    components = _rpf_components(L, params)
    closed = quad = 0j
    for weight, r, alpha in components:
        c0 = 1j * alpha * lam / (8.0 * math.pi)
        w = c0 * y * y
        closed += weight * y ** (-2 * rho - 1) * w ** (r - weight_2k) * tricomi_u(r, r - weight_2k - rho + 0.5, w)
        norm = math.sqrt(math.pi) * c0 ** (-weight_2k) * rgamma(n + 0.5) * rgamma(n + 1.0) / 2.0 ** (2 * n)
        argument = -2.0 * math.pi / (1j * alpha * lam)

        def integrand(u: float, r: int = r, norm: complex = norm, argument: complex = argument) -> complex:
            x = u * u
            return math.exp(-y * u) * norm * x**n * hyp1f1(r, n + 1, argument * x)

        quad += weight * _laplace_quad(L, integrand, _laplace_cutoff(2 * n, y))
    return closed, quad, len(components)


_KERNELS = {
    "L2": _kernel_l2,
    "L5": _kernel_l5,
    "L6": _kernel_l6,
    "Q1": _kernel_q1,
    "Q2": _kernel_q2,
    "I2": _kernel_i2,
}


def verify_proof_kernels(L: CompletedL, selector: KernelSelector, params: Mapping[str, float] | None = None) -> KernelCheck:
    """Closed form against quadrature for one kernel; rel_err is 0 when both vanish."""
    params = dict(params or {})
    if selector not in _KERNELS:
        raise DomainError(f"unknown kernel selector {selector!r}; expected one of {', '.join(KERNEL_SELECTORS)}")
    y = float(params.get("y", 10.0))
    rho = int(params.get("rho", 0))
    if y <= 0 or rho < 0:
        raise DomainError(f"kernels need y > 0 and rho >= 0, got y={y}, rho={rho}")
    closed, quad, count = _KERNELS[selector](L, y, rho, params)
    scale = max(abs(closed), abs(quad))
    rel_err = abs(closed - quad) / scale if scale > 0 else 0.0
    logger.debug(f"kernel {selector} y={y} rho={rho}: closed={closed}, quad={quad}, rel={rel_err:.2e}")
    return KernelCheck(selector, closed, quad, rel_err, count)
