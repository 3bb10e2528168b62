"""Seeded invariant battery across every module, small enough to run in seconds."""

from __future__ import annotations

import cmath
import math
from collections.abc import Callable
from typing import NamedTuple

import numpy as np
from loguru import logger

from hecke_lab.automorphic import arc_samples, check_modular_relation, coeffs_eisenstein, coeffs_from_list, trivial_series
from hecke_lab.errors import LabError
from hecke_lab.hecke_rpf import HeckeGroup, check_T_relation, default_samples, make_rpf, random_rpf, trivial_rpf
from hecke_lab.identities import (
    KERNEL_SELECTORS,
    first_rhs_terms,
    riesz_lhs,
    second_rhs_terms,
    verify_proof_kernels,
)
from hecke_lab.identities.types import IDENTITY_BUDGET
from hecke_lab.lseries import POLE_SET_NAMES, CompletedL, fe_residual, phi_continued, residue_oracle_sum, residue_sum
from hecke_lab.run import RunReport
from hecke_lab.specialfn import bessel_j, gamma, hyp1f1_series, tricomi_u, zeta

DEFAULT_SEED = 2024
MODULAR_K2 = HeckeGroup.from_p(3, 2)
# parameter sets for the weight-2 group with p = 3 and one pole block at α = 1
KERNEL_CASES: dict[str, dict[str, float]] = {
    "L2": {"m": 1, "rho": 1, "y": 20.0},
    "L5": {"r": 1, "alpha": 1.0, "rho": 0, "y": 10.0},
    "L6": {"r": 1, "alpha": 1.0, "rho": 0, "y": 10.0},
    "Q1": {"r": 1, "alpha": 1.0, "rho": 1, "y": 2.0, "delta": 2.7},
    "Q2": {"r": 1, "alpha": 1.0, "rho": 1, "y": 2.0, "delta": 2.7},
    "I2": {"r": 1, "alpha": 1.0, "rho": 0, "y": 4.0},
}


class SelfCheck(NamedTuple):
    name: str
    module: str
    tol: float
    measure: Callable[[np.random.Generator], float]


class CheckOutcome(NamedTuple):
    name: str
    module: str
    value: float
    tol: float
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.value <= self.tol


def _relative(value: complex, expected: complex) -> float:
    return abs(value - expected) / max(abs(expected), 1e-300)


def _gamma_reflection(_: np.random.Generator) -> float:
    z = 0.3 + 0.7j
    return _relative(gamma(z) * gamma(1 - z), math.pi / cmath.sin(math.pi * z))


def _half_integer_bessel(_: np.random.Generator) -> float:
    x = 7.3
    return _relative(bessel_j(0.5, x), math.sqrt(2 / (math.pi * x)) * math.sin(x))


def _kummer(_: np.random.Generator) -> float:
    a, b, z = 0.7, 1.9, 2.5 - 1j
    return _relative(hyp1f1_series(a, b, z), cmath.exp(z) * hyp1f1_series(b - a, b, -z))


def _tricomi_reduction(_: np.random.Generator) -> float:
    a, z = 1.3, 1.7 + 0.4j
    return _relative(tricomi_u(a, a + 1, z), z ** (-a))


def _zeta_two(_: np.random.Generator) -> float:
    return _relative(zeta(2.0), math.pi**2 / 6)


def _t_relation(rng: np.random.Generator) -> float:
    worst = 0.0
    for p in (3, 4, 5, "infinity"):
        group = HeckeGroup.from_p(p, 2)
        for _ in range(3):
            worst = max(worst, check_T_relation(random_rpf(rng, group), group, default_samples(20)))
    return worst


def _e4_modular(_: np.random.Generator) -> float:
    return check_modular_relation(coeffs_eisenstein(4, 200), None, MODULAR_K2, arc_samples(9))


def _e4_functional_equation(_: np.random.Generator) -> float:
    e4 = CompletedL(MODULAR_K2, coeffs_eisenstein(4, 2000))
    return max(fe_residual(e4, s) for s in (1 + 2j, 0.5 - 1j, 3.5 + 0.5j))


def _trivial_pair(group: HeckeGroup, m_max: int = 1) -> CompletedL:
    alpha0 = 1.5 - 0.5j
    return CompletedL(group, trivial_series(alpha0, m_max), trivial_rpf(alpha0, group))


def _trivial_continuation(_: np.random.Generator) -> float:
    L = _trivial_pair(HeckeGroup.from_p(4, 2))
    return max(abs(phi_continued(L, s)) for s in (0.5 + 0.5j, 2.2 - 1j))


def _e4_residues(_: np.random.Generator) -> float:
    e4 = CompletedL(MODULAR_K2, coeffs_eisenstein(4, 2000))
    return max(abs(residue_sum(e4, name) - residue_oracle_sum(e4, name)) for name in POLE_SET_NAMES)


def _first_trivial(_: np.random.Generator) -> float:
    L = _trivial_pair(MODULAR_K2, m_max=20)
    rhs = first_rhs_terms(L, 4.5, 2, IDENTITY_BUDGET)
    lhs = riesz_lhs(L, 4.5, 2)
    # L2 and L5 are ~1e3 times the left side and cancel down to it
    scale = max(abs(lhs), *(abs(value) for value in rhs.terms.values()))
    return abs(rhs.total - lhs) / scale


def _second_trivial(_: np.random.Generator) -> float:
    rhs = second_rhs_terms(_trivial_pair(MODULAR_K2), 3.0, 1)
    return abs(rhs.total) / max(abs(rhs.terms["a0term"]), abs(rhs.terms["extra"]))


def _kernels(_: np.random.Generator) -> float:
    L = CompletedL(HeckeGroup.from_p(3, 1), coeffs_from_list(0.0, [1.0, 0.5, -0.25], beta=1.0), make_rpf(pole_blocks={1.0: [1.0]}))
    return max(verify_proof_kernels(L, selector, KERNEL_CASES[selector]).rel_err for selector in KERNEL_SELECTORS)


SELF_CHECKS = (
    SelfCheck("gamma reflection", "specialfn", 1e-12, _gamma_reflection),
    SelfCheck("half-integer Bessel", "specialfn", 1e-12, _half_integer_bessel),
    SelfCheck("Kummer transformation", "specialfn", 1e-12, _kummer),
    SelfCheck("Tricomi reduction", "specialfn", 1e-10, _tricomi_reduction),
    SelfCheck("zeta(2)", "specialfn", 1e-13, _zeta_two),
    SelfCheck("T-relation of random RPFs", "hecke_rpf", 1e-10, _t_relation),
    SelfCheck("E4 modular relation", "automorphic", 1e-10, _e4_modular),
    SelfCheck("E4 functional equation", "lseries", 1e-8, _e4_functional_equation),
    SelfCheck("trivial pair continuation", "lseries", 1e-13, _trivial_continuation),
    SelfCheck("E4 residues", "lseries", 1e-7, _e4_residues),
    SelfCheck("first identity, trivial pair", "identities", 1e-13, _first_trivial),
    SelfCheck("second identity, trivial pair", "identities", 1e-13, _second_trivial),
    SelfCheck("proof kernels", "identities", 1e-6, _kernels),
)


def run_selfcheck(seed: int = DEFAULT_SEED, checks: tuple[SelfCheck, ...] = SELF_CHECKS) -> list[CheckOutcome]:
    """Every check gets its own generator seeded from `seed`, so results do not depend on order."""
    outcomes = []
    for index, check in enumerate(checks):
        rng = np.random.default_rng([seed, index])
        try:
            value = float(check.measure(rng))
        except LabError as error:
            logger.error(f"selfcheck {check.name} failed: {error}")
            outcomes.append(CheckOutcome(check.name, check.module, math.nan, check.tol, str(error)))
            continue
        logger.debug(f"selfcheck {check.name}: {value:.3e} (tol {check.tol:.0e})")
        outcomes.append(CheckOutcome(check.name, check.module, value, check.tol))
    return outcomes


def selfcheck_report(outcomes: list[CheckOutcome]) -> RunReport:
    report = RunReport("selfcheck", ("check", "module", "value", "tol"), math.nan, "value")
    for outcome in outcomes:
        status = "ok" if outcome.passed else ("error" if outcome.error else "breach")
        report.add((outcome.name, outcome.module, outcome.value, outcome.tol), status, {"error": outcome.error})
    return report


if __name__ == "__main__":
    for outcome in run_selfcheck():
        print(f"{'✅' if outcome.passed else '❌'} {outcome.module:12} {outcome.name}: {outcome.value:.2e}")
