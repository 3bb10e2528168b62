"""Run configuration: one strict JSON document per run.

Example:
    {"group": {"p": 3, "weight": 4},
     "coefficients": {"kind": "eisenstein", "weight": 4, "mmax": 20000},
     "check": {"type": "first", "rho": 5, "grid": [2.5, 5.5, 10.5], "tol": 1e-6}}
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, ValidationError, field_validator, model_validator

from hecke_lab.automorphic import (
    DEFAULT_M_MAX,
    DELTA_BETA,
    EISENSTEIN_WEIGHTS,
    GROWTH_MARGIN,
    CoefficientSeries,
    coeffs_delta,
    coeffs_eisenstein,
    coeffs_from_list,
    import_coeffs,
)
from hecke_lab.errors import ConfigError
from hecke_lab.hecke_rpf import EMPTY_RPF, HeckeGroup, RationalPeriodFunction, lambda_of, make_rpf, random_rpf
from hecke_lab.identities import Smoothing, first_rho_violation, second_rho_violation, second_y_violation
from hecke_lab.identities.kernels import KernelSelector
from hecke_lab.lseries import CompletedL, ContinuationConfig, default_continuation
from hecke_lab.lseries.residues import ORACLE_NODES, ORACLE_RADIUS
from hecke_lab.specialfn import DEFAULT_BUDGET, EvalBudget

ComplexPair = tuple[float, float]
_MAX_FINITE_P = 10_000
_LAMBDA_MATCH = 1e-12


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)


def _complex(pair: ComplexPair) -> complex:
    return complex(pair[0], pair[1])


class GroupSpec(StrictModel):
    """Either p (an integer >= 3 or "infinity") or lambda, plus the even weight 2k."""

    p: int | Literal["infinity"] | None = None
    lam: float | None = Field(default=None, alias="lambda")
    weight: int

    @model_validator(mode="after")
    def check_group(self) -> GroupSpec:
        if self.weight < 2 or self.weight % 2:
            raise ValueError(f"group.weight must be an even integer >= 2, got {self.weight}")
        if self.p is None and self.lam is None:
            raise ValueError("group needs p or lambda")
        if isinstance(self.p, int) and self.p < 3:
            raise ValueError(f"group.p must be an integer >= 3 or 'infinity', got {self.p}")
        if self.p is not None and self.lam is not None and abs(self.lam - lambda_of(self.p)) > _LAMBDA_MATCH:
            raise ValueError(f"group.lambda {self.lam} does not equal 2cos(pi/p) for p = {self.p}")
        if self.p is None:
            _p_from_lambda(self.lam)
        return self

    @property
    def resolved_p(self) -> int | Literal["infinity"]:
        return self.p if self.p is not None else _p_from_lambda(self.lam)

    def build(self) -> HeckeGroup:
        return HeckeGroup.from_p(self.resolved_p, self.weight // 2)


def _p_from_lambda(lam: float) -> int | Literal["infinity"]:
    if abs(lam - 2.0) <= _LAMBDA_MATCH:
        return "infinity"
    if 1.0 - _LAMBDA_MATCH <= lam < 2.0:
        p = round(math.pi / math.acos(lam / 2.0))
        if p <= _MAX_FINITE_P and abs(lambda_of(p) - lam) <= _LAMBDA_MATCH:
            return p
    raise ValueError(f"group.lambda must be 2cos(pi/p) for an integer p >= 3 or 2, got {lam}")


class EisensteinSpec(StrictModel):
    kind: Literal["eisenstein"]
    weight: int
    mmax: int = Field(default=DEFAULT_M_MAX, ge=1)

    @field_validator("weight")
    @classmethod
    def supported_weight(cls, weight: int) -> int:
        if weight not in EISENSTEIN_WEIGHTS:
            raise ValueError(f"coefficients.weight must be one of {EISENSTEIN_WEIGHTS}, got {weight}")
        return weight

    @property
    def beta(self) -> float:
        return self.weight + GROWTH_MARGIN

    def build(self) -> CoefficientSeries:
        return coeffs_eisenstein(self.weight, self.mmax)


class DeltaSpec(StrictModel):
    kind: Literal["delta"]
    mmax: int = Field(default=DEFAULT_M_MAX, ge=1)

    @property
    def beta(self) -> float:
        return DELTA_BETA

    def build(self) -> CoefficientSeries:
        return coeffs_delta(self.mmax)


class ListSpec(StrictModel):
    kind: Literal["list"]
    a0: ComplexPair = (0.0, 0.0)
    a: list[ComplexPair] = Field(min_length=1)
    beta: float = Field(gt=0)
    pad: int = Field(default=0, ge=0)
    finite: bool = False

    def build(self) -> CoefficientSeries:
        values = [_complex(pair) for pair in self.a] + [0j] * self.pad
        return coeffs_from_list(_complex(self.a0), values, self.beta, "list", finite=self.finite)


class CsvSpec(StrictModel):
    kind: Literal["csv"]
    path: Path
    beta: float = Field(gt=0)

    def build(self) -> CoefficientSeries:
        if not self.path.is_file():
            raise ConfigError(f"coefficient file {self.path} does not exist")
        return import_coeffs(self.path, self.beta)


CoefficientSpec = Annotated[EisensteinSpec | DeltaSpec | ListSpec | CsvSpec, Field(discriminator="kind")]


class ZeroTermSpec(StrictModel):
    r: int
    c: ComplexPair


class PoleBlockSpec(StrictModel):
    alpha: float
    c: list[ComplexPair] = Field(min_length=1)

    @field_validator("alpha")
    @classmethod
    def nonzero_alpha(cls, alpha: float) -> float:
        if alpha == 0:
            raise ValueError("PoleBlock.alpha must be nonzero")
        return alpha


class RpfSpec(StrictModel):
    zero_terms: list[ZeroTermSpec] = Field(default_factory=list)
    poles: list[PoleBlockSpec] = Field(default_factory=list)
    random: bool = False

    @model_validator(mode="after")
    def distinct_alphas(self) -> RpfSpec:
        alphas = [block.alpha for block in self.poles]
        if len(set(alphas)) != len(alphas):
            raise ValueError(f"rpf.poles must have distinct alpha values, got {alphas}")
        if self.random and (self.zero_terms or self.poles):
            raise ValueError("rpf.random excludes explicit zero_terms and poles")
        return self

    def build(self, group: HeckeGroup, seed: int | None) -> RationalPeriodFunction:
        if self.random:
            return random_rpf(np.random.default_rng(seed), group)
        if not self.zero_terms and not self.poles:
            return EMPTY_RPF
        return make_rpf(
            {term.r: _complex(term.c) for term in self.zero_terms},
            {block.alpha: [_complex(c) for c in block.c] for block in self.poles},
        )


class ContinuationSpec(StrictModel):
    delta: float | None = None
    quad_abs_tol: float = Field(default=1e-13, gt=0)
    quad_rel_tol: float = Field(default=1e-12, gt=0)
    pole_exclusion_radius: float = Field(default=1e-3, gt=0)


class BudgetSpec(StrictModel):
    max_terms: int = Field(default=100_000, ge=1)
    rel_tol: float = Field(default=DEFAULT_BUDGET.rel_tol, gt=0, lt=1)

    def build(self) -> EvalBudget:
        return EvalBudget(max_terms=self.max_terms, rel_tol=self.rel_tol)


class FeCheck(StrictModel):
    type: Literal["fe"]
    sigma: tuple[float, float] | None = None
    t: tuple[float, float] = (-3.0, 3.0)
    n: int = Field(default=7, ge=1)
    tol: float = Field(default=1e-8, gt=0)


class PerronSpec(StrictModel):
    sigma: float
    T: float = Field(default=150.0, gt=0)


class FirstCheck(StrictModel):
    type: Literal["first"]
    rho: int = Field(ge=0)
    grid: list[PositiveFloat]
    tol: float = Field(default=1e-6, gt=0)
    flip_lambda4: bool = False
    smoothing: Smoothing = "auto"
    perron: PerronSpec | None = None


class SecondCheck(StrictModel):
    type: Literal["second"]
    rho: int = Field(ge=0)
    grid: list[PositiveFloat]
    tol: float = Field(default=1e-8, gt=0)


class ResiduesCheck(StrictModel):
    type: Literal["residues"]
    tol: float = Field(default=1e-7, gt=0)
    radius: float = Field(default=ORACLE_RADIUS, gt=0, lt=0.5)
    nodes: int = Field(default=ORACLE_NODES, ge=4)


class KernelCase(StrictModel):
    selector: KernelSelector
    params: dict[str, float] = Field(default_factory=dict)


class KernelsCheck(StrictModel):
    type: Literal["kernels"]
    cases: list[KernelCase] = Field(min_length=1)
    tol: float = Field(default=1e-6, gt=0)


CheckSpec = Annotated[
    FeCheck | FirstCheck | SecondCheck | ResiduesCheck | KernelsCheck, Field(discriminator="type")
]


class OutputSpec(StrictModel):
    dir: Path = Path()
    stem: str | None = None


class RunConfig(StrictModel):
    group: GroupSpec
    coefficients: CoefficientSpec
    rpf: RpfSpec = RpfSpec()
    check: CheckSpec
    continuation: ContinuationSpec = ContinuationSpec()
    budget: BudgetSpec = BudgetSpec()
    output: OutputSpec = OutputSpec()
    seed: int | None = None

    @model_validator(mode="after")
    def check_consistency(self) -> RunConfig:
        if self.rpf.random and self.seed is None:
            raise ValueError("rpf.random needs a seed")
        self._check_modular_form()
        for term in self.rpf.zero_terms:
            if term.r < self.group.weight // 2:
                raise ValueError(f"zero term r={term.r} violates k <= r with k={self.group.weight // 2}")
        beta, weight, check = self.coefficients.beta, self.group.weight, self.check
        match check:
            case FirstCheck():
                if message := first_rho_violation(beta, weight, check.rho):
                    raise ValueError(message)
            case SecondCheck():
                if message := second_rho_violation(beta, weight, check.rho):
                    raise ValueError(message)
                lam = lambda_of(self.group.resolved_p)
                for y in check.grid:
                    if message := second_y_violation(lam, [block.alpha for block in self.rpf.poles], y):
                        raise ValueError(message)
            case _:
                pass
        return self

    def _check_modular_form(self) -> None:
        coefficients, group = self.coefficients, self.group
        if not isinstance(coefficients, EisensteinSpec | DeltaSpec):
            return
        weight = coefficients.weight if isinstance(coefficients, EisensteinSpec) else 12
        if group.resolved_p != 3 or group.weight != weight:
            raise ValueError(
                f"{coefficients.kind} coefficients need group p = 3 and weight {weight}, "
                f"got p = {group.resolved_p}, weight {group.weight}"
            )

    def build(self) -> CompletedL:
        """The CompletedL this run evaluates; computes the coefficients."""
        group = self.group.build()
        series = self.coefficients.build()
        rpf = self.rpf.build(group, self.seed)
        base = default_continuation(series, group)
        spec = self.continuation
        config = ContinuationConfig(
            delta_strip=base.delta_strip if spec.delta is None else spec.delta,
            quad_abs_tol=spec.quad_abs_tol,
            quad_rel_tol=spec.quad_rel_tol,
            pole_exclusion_radius=spec.pole_exclusion_radius,
        )
        return CompletedL(group, series, rpf, config)


def _describe(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "config"
        message = item["msg"].removeprefix("Value error, ")
        lines.append(f"{location}: {message}")
    return "; ".join(lines)


def parse_config(text: str) -> RunConfig:
    """Validated RunConfig from a JSON document; ConfigError names the line/column or the violated rule."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise ConfigError(f"invalid JSON at line {error.lineno}, column {error.colno}: {error.msg}") from error
    return validate_config(data)


def validate_config(data: object) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as error:
        raise ConfigError(_describe(error)) from error


def load_config(path: Path) -> RunConfig:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise ConfigError(f"cannot read config {path}: {error}") from error
    return parse_config(text)


def apply_overrides(
    config: RunConfig,
    *,
    tol: float | None = None,
    max_terms: int | None = None,
    seed: int | None = None,
    out: Path | None = None,
) -> RunConfig:
    """Command-line flags win over the document; the result is validated again."""
    data = config.model_dump(by_alias=True)
    if tol is not None:
        data["check"]["tol"] = tol
    if max_terms is not None:
        data["budget"]["max_terms"] = max_terms
    if seed is not None:
        data["seed"] = seed
    if out is not None:
        data["output"]["dir"] = out
    return validate_config(data)


def config_echo(config: RunConfig) -> dict:
    """JSON-ready form that validate_config turns back into an equal RunConfig."""
    return config.model_dump(mode="json", by_alias=True)
