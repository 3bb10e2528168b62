"""Fourier-coefficient models of entire automorphic integrals.

F(z) = Σ_{m≥0} a_m e^{2πimz/λ} is stored as a CoefficientSeries: a₀, the
coefficients a_1 … a_{M_max} and a declared growth exponent β with
Σ|a_m| m^{-β} < ∞. Tail bounds everywhere assume |a_m| <= K m^{β-1/4} with K
measured over the stored range, unless the series is declared finite.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from functools import cache, cached_property
from pathlib import Path
from typing import NamedTuple

import numpy as np
from loguru import logger

from hecke_lab.errors import ConfigError, DomainError, TruncationError
from hecke_lab.hecke_rpf import HeckeGroup, RationalPeriodFunction, eval_rpf
from hecke_lab.specialfn import DEFAULT_BUDGET, EvalBudget, bernoulli_numbers, compensated_sum

EISENSTEIN_WEIGHTS = (4, 6, 8, 10, 14)
GROWTH_MARGIN = 0.25
DELTA_BETA = 6.75
DEFAULT_M_MAX = 20_000


@dataclass(frozen=True, eq=False)
class CoefficientSeries:
    """a₀ plus a_1 … a_{M_max}; coeffs[m-1] holds a_m.

    finite: a_m = 0 for every m > M_max, so tails past M_max vanish.
    exact: the integer coefficients when they are known exactly (τ(m) passes 2^53).
    """

    a0: complex
    coeffs: np.ndarray
    beta: float
    label: str = "custom"
    finite: bool = False
    exact: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        values = np.array(self.coeffs, dtype=np.complex128)
        assert values.ndim == 1 and values.size >= 1, "coeffs must be a nonempty 1-d array"
        assert np.all(np.isfinite(values)), "coeffs must be finite"
        assert self.beta > 0, f"beta must be positive, got {self.beta}"
        assert self.exact is None or len(self.exact) == values.size, "exact must match coeffs"
        values.flags.writeable = False
        object.__setattr__(self, "coeffs", values)
        object.__setattr__(self, "a0", complex(self.a0))

    @property
    def m_max(self) -> int:
        return int(self.coeffs.size)

    @property
    def growth_exponent(self) -> float:
        return self.beta - GROWTH_MARGIN

    @cached_property
    def growth_constant(self) -> float:
        """K = max_m |a_m| / m^{β-1/4} over the stored range."""
        m = np.arange(1, self.m_max + 1, dtype=np.float64)
        return float(np.max(np.abs(self.coeffs) / m**self.growth_exponent))

    @property
    def tail_constant(self) -> float:
        """The K that bounds a_m for m > M_max: 0 for a finite series."""
        return 0.0 if self.finite else self.growth_constant

    @property
    def is_zero(self) -> bool:
        return self.a0 == 0 and not np.any(self.coeffs)

    def coefficient(self, m: int) -> complex:
        if m == 0:
            return self.a0
        return complex(self.coeffs[m - 1])

    def scaled(self, factor: complex) -> CoefficientSeries:
        return replace(self, a0=factor * self.a0, coeffs=factor * self.coeffs, label=f"{factor}*{self.label}", exact=None)

    def truncated(self, m_max: int) -> CoefficientSeries:
        """The first m_max coefficients, with the dropped ones left to the tail model."""
        assert 1 <= m_max <= self.m_max, f"cannot truncate {self.m_max} coefficients to {m_max}"
        exact = self.exact[:m_max] if self.exact is not None else None
        return CoefficientSeries(self.a0, self.coeffs[:m_max], self.beta, self.label, exact=exact)

    def without_a0(self) -> CoefficientSeries:
        return replace(self, a0=0.0, label=f"{self.label}-a0")


def coeffs_from_list(
    a0: complex,
    coeffs: Sequence[complex],
    beta: float,
    label: str = "custom",
    *,
    finite: bool = False,
) -> CoefficientSeries:
    return CoefficientSeries(a0, np.asarray(coeffs, dtype=np.complex128), beta, label, finite=finite)


def trivial_series(alpha0: complex, m_max: int = 1) -> CoefficientSeries:
    """F ≡ -α₀, the automorphic integral whose period function is trivial_rpf(α₀)."""
    return CoefficientSeries(-complex(alpha0), np.zeros(m_max, dtype=np.complex128), 1.0, "trivial", finite=True)


def divisor_sigma(power: int, m_max: int) -> np.ndarray:
    """σ_power(m) for m = 1 … m_max by a divisor sieve (as floats)."""
    sigma = np.zeros(m_max + 1, dtype=np.float64)
    for d in range(1, m_max + 1):
        sigma[d::d] += float(d) ** power
    return sigma[1:]


def eisenstein_normalisation(weight: int) -> float:
    """-2·weight/B_weight, so that E_weight = 1 + c·Σσ_{weight-1}(m)qᵐ."""
    return float(-2 * weight / bernoulli_numbers(weight)[weight])


def coeffs_eisenstein(weight: int, m_max: int = DEFAULT_M_MAX) -> CoefficientSeries:
    if weight not in EISENSTEIN_WEIGHTS:
        raise DomainError(f"unsupported Eisenstein weight {weight}; choose one of {EISENSTEIN_WEIGHTS}")
    assert m_max >= 1, f"m_max must be >= 1, got {m_max}"
    scale = eisenstein_normalisation(weight)
    coeffs = scale * divisor_sigma(weight - 1, m_max)
    logger.debug(f"E{weight}: normalisation {scale}, {m_max} coefficients")
    return CoefficientSeries(1.0, coeffs, weight + GROWTH_MARGIN, f"E{weight}")


def coeffs_delta(m_max: int = DEFAULT_M_MAX) -> CoefficientSeries:
    """τ(1) … τ(m_max) from q·Π(1-qⁿ)²⁴ in exact integer arithmetic."""
    assert m_max >= 1, f"m_max must be >= 1, got {m_max}"
    tau = ramanujan_tau(m_max)
    return CoefficientSeries(0.0, np.array([float(t) for t in tau]), DELTA_BETA, "Delta", exact=tau)


@cache
def ramanujan_tau(m_max: int) -> tuple[int, ...]:
    """Exact τ(1) … τ(m_max).

    Π(1-qⁿ)³ = Σ(-1)^j (2j+1) q^{j(j+1)/2} (Jacobi), raised to the 8th power by
    three truncated squarings with Kronecker substitution.
    """
    degree = m_max - 1
    cube = [0] * (degree + 1)
    j = 0
    while j * (j + 1) // 2 <= degree:
        cube[j * (j + 1) // 2] = (-1) ** j * (2 * j + 1)
        j += 1
    power = cube
    for _ in range(3):
        power = _square_truncated(power, degree)
    return tuple(power)


def _square_truncated(poly: list[int], degree: int) -> list[int]:
    largest = max(abs(c) for c in poly)
    bits = 2 * largest.bit_length() + len(poly).bit_length() + 2
    slot = (bits + 7) // 8
    packed = _pack(poly, slot)
    return _unpack(packed * packed, 2 * len(poly) - 1, slot)[: degree + 1]


def _pack(poly: list[int], slot: int) -> int:
    positive = b"".join(max(c, 0).to_bytes(slot, "little") for c in poly)
    negative = b"".join(max(-c, 0).to_bytes(slot, "little") for c in poly)
    return int.from_bytes(positive, "little") - int.from_bytes(negative, "little")


def _unpack(value: int, count: int, slot: int) -> list[int]:
    bias = 1 << (8 * slot - 1)
    offset = int.from_bytes(bias.to_bytes(slot, "little") * count, "little")
    raw = (value + offset).to_bytes(count * slot, "little")
    return [int.from_bytes(raw[i * slot : (i + 1) * slot], "little") - bias for i in range(count)]


class TruncatedValue(NamedTuple):
    value: complex
    tail_bound: float
    n_terms: int


def geometric_tail(constant: float, exponent: float, radius: float, n: int) -> float:
    """Bound for Σ_{m>n} K m^γ rᵐ; inf when the ratio test fails at n."""
    if constant == 0.0:
        return 0.0
    ratio = ((n + 2) / (n + 1)) ** exponent * radius
    if ratio >= 1.0:
        return math.inf
    log_first = math.log(constant) + exponent * math.log(n + 1) + (n + 1) * math.log(radius)
    return math.exp(log_first) / (1.0 - ratio)


def truncated_sum(series: CoefficientSeries, group: HeckeGroup, z: complex, n: int) -> TruncatedValue:
    """a₀ + Σ_{m<=n} a_m e^{2πimz/λ} with the bound on everything dropped."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError(f"F needs Im z > 0, got {z}")
    n = min(n, series.m_max)
    m = np.arange(1, n + 1, dtype=np.float64)
    terms = series.coeffs[:n] * np.exp((2j * math.pi * z / group.lam) * m)
    radius = math.exp(-2.0 * math.pi * z.imag / group.lam)
    constant = series.tail_constant if n == series.m_max else series.growth_constant
    bound = geometric_tail(constant, series.growth_exponent, radius, n)
    return TruncatedValue(series.a0 + compensated_sum(terms), bound, n)


def eval_F(
    series: CoefficientSeries,
    group: HeckeGroup,
    z: complex,
    budget: EvalBudget = DEFAULT_BUDGET,
) -> complex:
    """F(z) with a certified tail; refuses when the stored coefficients cannot certify it."""
    n = min(64, series.m_max)
    while True:
        result = truncated_sum(series, group, z, n)
        if result.tail_bound <= budget.rel_tol * max(abs(result.value), budget.abs_floor):
            return result.value
        if n == series.m_max:
            raise TruncationError(
                f"tail bound {result.tail_bound:.2e} at Im z = {complex(z).imag} not certifiable "
                f"with {series.m_max} coefficients of {series.label}"
            )
        n = min(2 * n, series.m_max)


def check_modular_relation(
    series: CoefficientSeries,
    q: RationalPeriodFunction | None,
    group: HeckeGroup,
    samples: Sequence[complex],
    budget: EvalBudget = DEFAULT_BUDGET,
) -> float:
    """max |z^{-2k}F(-1/z) - F(z) - q(z)| / (1 + |F(z)|)."""
    worst = 0.0
    for z in samples:
        z = complex(z)
        value = eval_F(series, group, z, budget)
        image = z ** (-group.weight) * eval_F(series, group, -1.0 / z, budget)
        period = eval_rpf(q, group, z) if q is not None else 0j
        worst = max(worst, abs(image - value - period) / (1.0 + abs(value)))
    return worst


def arc_samples(count: int, margin: float = 0.05) -> list[complex]:
    """Points e^{iθ} on the unit arc between the corners of the standard fundamental domain."""
    thetas = np.linspace(math.pi / 3 + margin, 2 * math.pi / 3 - margin, count)
    return [complex(math.cos(t), math.sin(t)) for t in thetas]


def export_coeffs(series: CoefficientSeries, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["m", "re", "im"])
        writer.writerow([0, f"{series.a0.real:.17g}", f"{series.a0.imag:.17g}"])
        for m, value in enumerate(series.coeffs, start=1):
            writer.writerow([m, f"{value.real:.17g}", f"{value.imag:.17g}"])


def import_coeffs(path: Path, beta: float, label: str | None = None) -> CoefficientSeries:
    """Read an m,re,im table whose rows run m = 0, 1, 2, … without gaps."""
    with path.open(newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != ["m", "re", "im"]:
            raise ConfigError(f"{path}: expected header m,re,im, got {reader.fieldnames}")
        values: list[complex] = []
        for row_number, row in enumerate(reader, start=2):
            try:
                m, value = int(row["m"]), complex(float(row["re"]), float(row["im"]))
            except (TypeError, ValueError) as error:
                raise ConfigError(f"{path}:{row_number}: malformed row {row}") from error
            if m != len(values):
                raise ConfigError(f"{path}:{row_number}: expected m = {len(values)}, got {m}")
            values.append(value)
    if len(values) < 2:
        raise ConfigError(f"{path}: need a₀ and at least one coefficient")
    return coeffs_from_list(values[0], values[1:], beta, label or path.stem)


if __name__ == "__main__":
    modular = HeckeGroup.from_p(3, 2)
    e4 = coeffs_eisenstein(4, 200)
    print(f"E4(i) = {eval_F(e4, modular, 1j)}")
    print(f"tau(1..6) = {ramanujan_tau(6)}")
    print(f"E4 modular residual on the arc: {check_modular_relation(e4, None, modular, arc_samples(9)):.2e}")
