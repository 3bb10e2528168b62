"""Perron-formula oracle for Riesz means.

(1/2πi)∫_{(σ)} Γ(s)φ(s) x^{s+ρ}/Γ(s+ρ+1) ds equals the primed Riesz sum over
1 <= m <= x; the m = 0 term a₀x^ρ/Γ(ρ+1) is added back so the result is
comparable with riesz_lhs.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from loguru import logger

from hecke_lab.errors import DomainError
from hecke_lab.lseries import CompletedL
from hecke_lab.specialfn import rgamma
from hecke_lab.specialfn.quadrature import line_trapezoid

PERRON_STEP = 0.05
_CHUNK = 256


class PerronResult(NamedTuple):
    value: complex
    integral: complex
    envelope: float
    n_terms: int


def perron_oracle(L: CompletedL, x: float, rho: int, sigma: float, T: float, step: float = PERRON_STEP) -> PerronResult:
    """Trapezoid quadrature of the Perron integral on σ ± iT.

    The envelope bounds the dropped tails |t| > T by Σ|a_m| m^{-σ} x^{σ+ρ}/(πρT^ρ);
    it is infinite for ρ = 0.
    """
    series = L.series
    if sigma <= series.beta + 1.0:
        raise DomainError(f"perron_oracle needs sigma > beta + 1 = {series.beta + 1.0}, got {sigma}")
    assert rho >= 0, f"rho must be nonnegative, got {rho}"
    assert x > 0 and T > 0, f"x and T must be positive, got x={x}, T={T}"
    a0_term = series.a0 * x**rho * rgamma(rho + 1.0)
    if not np.any(series.coeffs):
        return PerronResult(a0_term, 0j, 0.0, 0)

    log_m = np.log(np.arange(1, series.m_max + 1, dtype=np.float64))
    log_x = math.log(x)

    def integrand(s: np.ndarray) -> np.ndarray:
        dirichlet = np.empty(s.shape, dtype=np.complex128)
        for start in range(0, s.size, _CHUNK):
            block = s[start : start + _CHUNK]
            dirichlet[start : start + _CHUNK] = np.exp(-np.outer(block, log_m)) @ series.coeffs
        weight = np.ones(s.shape, dtype=np.complex128)
        for j in range(rho + 1):
            weight *= s + j
        return dirichlet * np.exp((s + rho) * log_x) / weight

    integral = line_trapezoid(integrand, sigma, T, step)
    if rho == 0:
        envelope = math.inf
    else:
        moment = float(np.sum(np.abs(series.coeffs) * np.exp(-sigma * log_m)))
        envelope = moment * x ** (sigma + rho) / (math.pi * rho * T**rho)
    logger.debug(f"perron x={x} rho={rho} sigma={sigma} T={T}: integral={integral}, envelope={envelope:.2e}")
    return PerronResult(integral + a0_term, integral, envelope, series.m_max)
