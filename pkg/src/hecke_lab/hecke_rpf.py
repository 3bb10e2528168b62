"""Hecke groups, the weight-2k slash action and rational period functions.

A rational period function here is the parametric family

    q(z) = Σ_{k≤r≤L} C_r f_r(z, 0) + Σ_j Σ_{r=1..M_j} C_{rj} f_r(z, α_j),
    f_r(z, α) = (z-α)^{-r} - (-1)^r α^{-r} z^{-2k+r} (z + 1/α)^{-r},
    f_r(z, 0) = z^{-r} - (-1)^r z^{-2k+r},

each of which satisfies q|T + q = 0. Whether a given q also satisfies the
p-term cocycle relation is reported by check_cocycle_relation, never enforced.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from loguru import logger

from hecke_lab.errors import DomainError, PoleError

Infinity = Literal["infinity"]
POLE_DISTANCE = 1e-8
_LAMBDA_TOL = 1e-14
_DET_TOL = 1e-12


def lambda_of(p: int | Infinity) -> float:
    """λ_p = 2cos(π/p); the θ-group (p = infinity) has λ = 2."""
    if p == "infinity":
        return 2.0
    if not isinstance(p, int) or p < 3:
        raise DomainError(f"Hecke group parameter p must be an integer >= 3 or 'infinity', got {p!r}")
    return 2.0 * math.cos(math.pi / p)


@dataclass(frozen=True)
class HeckeGroup:
    """G(λ_p) acting in weight 2k."""

    p: int | Infinity
    lam: float
    k: int

    def __post_init__(self) -> None:
        assert self.k >= 1, f"k must be >= 1, got {self.k}"
        assert abs(self.lam - lambda_of(self.p)) <= _LAMBDA_TOL, f"lambda {self.lam} does not match p={self.p}"

    @classmethod
    def from_p(cls, p: int | Infinity, k: int) -> HeckeGroup:
        return cls(p=p, lam=lambda_of(p), k=k)

    @property
    def weight(self) -> int:
        return 2 * self.k

    @property
    def i_2k(self) -> int:
        """i^{2k} = (-1)^k, exact."""
        return -1 if self.k % 2 else 1


@dataclass(frozen=True)
class GroupElement:
    """Real 2×2 matrix of determinant one acting by Möbius transformation."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        assert abs(det - 1.0) <= _DET_TOL * max(1.0, abs(self.a * self.d)), f"determinant {det} != 1"

    def __matmul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def power(self, n: int) -> GroupElement:
        assert n >= 0, f"only nonnegative powers are supported, got {n}"
        result = IDENTITY
        for _ in range(n):
            result = result @ self
        return result

    def apply(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def automorphy(self, z: complex) -> complex:
        return self.c * z + self.d


IDENTITY = GroupElement(1.0, 0.0, 0.0, 1.0)
T = GroupElement(0.0, 1.0, -1.0, 0.0)


def translation(group: HeckeGroup) -> GroupElement:
    """S_λ: z ↦ z + λ."""
    return GroupElement(1.0, group.lam, 0.0, 1.0)


def slash(f: Callable[[complex], complex], M: GroupElement, group: HeckeGroup, z: complex) -> complex:
    """(f|M)(z) = (cz+d)^{-2k} f(Mz)."""
    if z.imag <= 0:
        raise DomainError(f"slash needs Im z > 0, got {z}")
    j = M.automorphy(z)
    if abs(j) < 1e-14:
        raise PoleError(f"cz + d vanishes at z = {z}")
    return j ** (-group.weight) * f(M.apply(z))


@dataclass(frozen=True)
class ZeroPoleTerm:
    """C_r · f_r(z, 0)."""

    r: int
    coeff: complex


@dataclass(frozen=True)
class PoleBlock:
    """Σ_{r=1..M} C_{r} f_r(z, α); coeffs[r-1] holds C_r."""

    alpha: float
    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        assert self.alpha != 0, "PoleBlock.alpha must be nonzero"
        assert len(self.coeffs) >= 1, "PoleBlock.coeffs must be nonempty"

    @property
    def size(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class RationalPeriodFunction:
    zero_terms: tuple[ZeroPoleTerm, ...] = ()
    pole_blocks: tuple[PoleBlock, ...] = ()

    def __post_init__(self) -> None:
        indices = [term.r for term in self.zero_terms]
        assert len(indices) == len(set(indices)), f"zero-term indices must be distinct, got {indices}"
        alphas = [block.alpha for block in self.pole_blocks]
        assert len(alphas) == len(set(alphas)), f"pole-block alphas must be distinct, got {alphas}"

    @property
    def is_empty(self) -> bool:
        return not self.zero_terms and not self.pole_blocks

    @property
    def max_zero_index(self) -> int:
        """L, the largest r among the zero terms (0 when there are none)."""
        return max((term.r for term in self.zero_terms), default=0)

    def scaled(self, factor: complex) -> RationalPeriodFunction:
        return RationalPeriodFunction(
            tuple(ZeroPoleTerm(t.r, factor * t.coeff) for t in self.zero_terms),
            tuple(PoleBlock(b.alpha, tuple(factor * c for c in b.coeffs)) for b in self.pole_blocks),
        )


EMPTY_RPF = RationalPeriodFunction()


def make_rpf(
    zero_terms: dict[int, complex] | None = None,
    pole_blocks: dict[float, Sequence[complex]] | None = None,
) -> RationalPeriodFunction:
    return RationalPeriodFunction(
        tuple(ZeroPoleTerm(r, complex(c)) for r, c in sorted((zero_terms or {}).items())),
        tuple(PoleBlock(float(alpha), tuple(complex(c) for c in cs)) for alpha, cs in (pole_blocks or {}).items()),
    )


def validate_rpf(q: RationalPeriodFunction, group: HeckeGroup) -> None:
    """Check k <= r for zero terms and warn about identically-zero terms."""
    for term in q.zero_terms:
        if term.r < group.k:
            raise DomainError(f"zero term r={term.r} violates k <= r with k={group.k}")
        if term.r == group.k and group.k % 2 == 0:
            logger.warning(f"zero term r=k={group.k} with k even is identically zero (degenerate input)")


def f_zero(r: int, z: complex, k: int) -> complex:
    return z ** (-r) - (-1) ** r * z ** (r - 2 * k)


def f_alpha(r: int, z: complex, alpha: float, k: int) -> complex:
    return (z - alpha) ** (-r) - (-1) ** r * alpha ** (-r) * z ** (r - 2 * k) * (z + 1.0 / alpha) ** (-r)


def eval_rpf(q: RationalPeriodFunction, group: HeckeGroup, z: complex) -> complex:
    """q(z) as the finite sum of the family."""
    z = complex(z)
    if q.is_empty:
        return 0j
    _check_pole_distance(q, z)
    k = group.k
    total = sum((term.coeff * f_zero(term.r, z, k) for term in q.zero_terms), 0j)
    for block in q.pole_blocks:
        for r, coeff in enumerate(block.coeffs, start=1):
            total += coeff * f_alpha(r, z, block.alpha, k)
    return total


def _check_pole_distance(q: RationalPeriodFunction, z: complex) -> None:
    poles = [0.0] if q.zero_terms or q.pole_blocks else []
    for block in q.pole_blocks:
        poles.extend((block.alpha, -1.0 / block.alpha))
    for pole in poles:
        if abs(z - pole) < POLE_DISTANCE:
            raise PoleError(f"z = {z} lies within {POLE_DISTANCE} of the pole {pole}")


def trivial_rpf(alpha0: complex, group: HeckeGroup) -> RationalPeriodFunction:
    """α₀(1 - z^{-2k}) = -α₀ f_{2k}(z, 0), the period function of F ≡ -α₀."""
    if alpha0 == 0:
        return EMPTY_RPF
    return RationalPeriodFunction((ZeroPoleTerm(group.weight, -complex(alpha0)),))


PeriodFunction = RationalPeriodFunction | Callable[[complex], complex]


def _as_function(q: PeriodFunction, group: HeckeGroup) -> Callable[[complex], complex]:
    if isinstance(q, RationalPeriodFunction):
        return lambda z: eval_rpf(q, group, z)
    return q


def check_T_relation(q: PeriodFunction, group: HeckeGroup, samples: Sequence[complex]) -> float:
    """max |(q|T)(z) + q(z)| / (1 + |q(z)|) over the samples."""
    f = _as_function(q, group)
    worst = 0.0
    for z in samples:
        value = f(z)
        worst = max(worst, abs(slash(f, T, group, z) + value) / (1.0 + abs(value)))
    return worst


def check_cocycle_relation(
    q: PeriodFunction,
    group: HeckeGroup,
    samples: Sequence[complex] | None = None,
) -> float:
    """max residual of q|(S_λT)^{p-1} + … + q|(S_λT) + q over the samples."""
    if group.p == "infinity":
        raise DomainError("the p-term cocycle relation needs a finite p")
    f = _as_function(q, group)
    points = default_samples(50) if samples is None else samples
    generator = translation(group) @ T
    powers = [generator.power(j) for j in range(group.p)]
    worst = 0.0
    for z in points:
        value = f(z)
        total = sum((slash(f, M, group, z) for M in powers), 0j)
        worst = max(worst, abs(total) / (1.0 + abs(value)))
    logger.debug(f"cocycle residual for p={group.p}, k={group.k}: {worst:.3e}")
    return worst


def default_samples(count: int, seed: int = 7) -> list[complex]:
    """Upper-half-plane points with 0.2 <= Im z <= 2, |Re z| <= 2."""
    rng = np.random.default_rng(seed)
    return [complex(x, y) for x, y in zip(rng.uniform(-2, 2, count), rng.uniform(0.2, 2, count), strict=True)]


@dataclass(frozen=True)
class RandomRPFSpec:
    max_blocks: int = 2
    max_block_size: int = 3
    max_extra_zero_index: int = 3
    alpha_range: tuple[float, float] = field(default=(0.3, 3.0))


def random_rpf(rng: np.random.Generator, group: HeckeGroup, spec: RandomRPFSpec = RandomRPFSpec()) -> RationalPeriodFunction:
    """Draw from the family: C in the unit disk, α ∈ ±[0.3, 3], M_j <= 3, L <= k+3."""

    def unit_disk() -> complex:
        radius, angle = math.sqrt(rng.uniform()), rng.uniform(0, 2 * math.pi)
        return complex(radius * math.cos(angle), radius * math.sin(angle))

    k = group.k
    indices = [r for r in range(k, k + spec.max_extra_zero_index + 1) if rng.uniform() < 0.5]
    zero_terms = tuple(ZeroPoleTerm(r, unit_disk()) for r in indices)
    alphas: list[float] = []
    for _ in range(int(rng.integers(1, spec.max_blocks + 1))):
        alpha = float(rng.uniform(*spec.alpha_range)) * (1 if rng.uniform() < 0.5 else -1)
        if all(abs(alpha - other) > 1e-3 for other in alphas):
            alphas.append(alpha)
    blocks = tuple(
        PoleBlock(alpha, tuple(unit_disk() for _ in range(int(rng.integers(1, spec.max_block_size + 1)))))
        for alpha in alphas
    )
    return RationalPeriodFunction(zero_terms, blocks)


if __name__ == "__main__":
    modular = HeckeGroup.from_p(3, 2)
    q = trivial_rpf(1.0, modular)
    print(f"λ_3 = {modular.lam}, q(2i) = {eval_rpf(q, modular, 2j)}")
    print(f"T-relation residual: {check_T_relation(q, modular, default_samples(20)):.2e}")
    print(f"cocycle residual:    {check_cocycle_relation(q, modular):.2e}")
