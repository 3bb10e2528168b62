"""Turn a validated RunConfig into one report table.

Every row carries a status: ok, breach (residual above tolerance), error
(captured LabError) or skipped (grid point on a pole). A run passes when
every row is ok or skipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from loguru import logger

from hecke_lab.config import (
    FeCheck,
    FirstCheck,
    KernelsCheck,
    ResiduesCheck,
    RunConfig,
    SecondCheck,
)
from hecke_lab.errors import LabError, PoleError
from hecke_lab.identities import (
    FIRST_IDENTITY_NOTE,
    FIRST_TERM_NAMES,
    SECOND_TERM_NAMES,
    SMOOTHING_NOTE,
    IdentityRequest,
    PointReport,
    identity_report,
    perron_oracle,
    verify_proof_kernels,
)
from hecke_lab.lseries import POLE_SET_NAMES, CompletedL, fe_residual, residue_oracle_sum, residue_sum
from hecke_lab.specialfn import EvalBudget

RowStatus = Literal["ok", "breach", "error", "skipped"]
Cell = float | int | str

COMMAND_OF_CHECK = {
    "fe": "verify-fe",
    "first": "verify-first",
    "second": "verify-second",
    "residues": "residues",
    "kernels": "kernels",
}


@dataclass(frozen=True)
class RunReport:
    command: str
    header: tuple[str, ...]
    tolerance: float
    error_column: str
    rows: list[tuple[Cell, ...]] = field(default_factory=list)
    statuses: list[RowStatus] = field(default_factory=list)
    diagnostics: list[dict] = field(default_factory=list)
    notes: tuple[str, ...] = ()

    def add(self, row: tuple[Cell, ...], status: RowStatus, diagnostic: dict | None = None) -> None:
        assert len(row) == len(self.header), f"row has {len(row)} cells, header {len(self.header)}"
        self.rows.append(row)
        self.statuses.append(status)
        self.diagnostics.append({"status": status, **(diagnostic or {})})

    def count(self, status: RowStatus) -> int:
        return self.statuses.count(status)

    @property
    def passed(self) -> bool:
        return all(status in ("ok", "skipped") for status in self.statuses)

    @property
    def warnings(self) -> list[str]:
        return [w for d in self.diagnostics for w in d.get("warnings", [])]

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 2


def _pair(value: complex) -> list[float]:
    return [value.real, value.imag]


def _judge(error: float, tol: float) -> RowStatus:
    return "ok" if error <= tol else "breach"


def identity_header(point_name: str, names: tuple[str, ...], used_name: str) -> tuple[str, ...]:
    columns = [point_name, "lhs_re", "lhs_im"]
    for name in names:
        columns += [f"{name}_re", f"{name}_im"]
    return (*columns, "rhs_re", "rhs_im", "abs_err", "rel_err", used_name)


FIRST_HEADER = identity_header("x", FIRST_TERM_NAMES, "bessel_terms_used")
SECOND_HEADER = identity_header("y", SECOND_TERM_NAMES, "terms_used")
FE_HEADER = ("sigma", "t", "residual")
RESIDUES_HEADER = ("set", "closed_re", "closed_im", "oracle_re", "oracle_im", "abs_err")
KERNELS_HEADER = ("selector", "closed_re", "closed_im", "quad_re", "quad_im", "rel_err", "components")


def _identity_row(point: PointReport, names: tuple[str, ...]) -> tuple[Cell, ...]:
    cells: list[Cell] = [point.point, point.lhs.real, point.lhs.imag]
    for name in names:
        cells += [point.rhs_terms[name].real, point.rhs_terms[name].imag]
    return (*cells, point.rhs_total.real, point.rhs_total.imag, point.abs_err, point.rel_err, point.terms_used)


def _identity_diagnostic(point: PointReport) -> dict:
    return {
        "point": point.point,
        "terms": {name: _pair(value) for name, value in point.rhs_terms.items()},
        "extras": {name: _pair(value) for name, value in point.extras.items()},
        "terms_used": point.terms_used,
        "warnings": list(point.warnings),
        "error": point.error,
    }


def _add_perron(L: CompletedL, check: FirstCheck, diagnostic: dict) -> None:
    assert check.perron is not None
    try:
        result = perron_oracle(L, diagnostic["point"], check.rho, check.perron.sigma, check.perron.T)
    except LabError as error:
        diagnostic["extras"]["perron_error"] = str(error)
        return
    diagnostic["extras"]["perron"] = _pair(result.value)
    diagnostic["extras"]["perron_envelope"] = result.envelope


def _first_notes(check: FirstCheck) -> tuple[str, ...]:
    return (FIRST_IDENTITY_NOTE,) if check.smoothing == "off" else (FIRST_IDENTITY_NOTE, SMOOTHING_NOTE)


def run_identity(L: CompletedL, check: FirstCheck | SecondCheck, budget: EvalBudget, threads: int = 1) -> RunReport:
    first = isinstance(check, FirstCheck)
    names = FIRST_TERM_NAMES if first else SECOND_TERM_NAMES
    report = RunReport(
        COMMAND_OF_CHECK[check.type],
        FIRST_HEADER if first else SECOND_HEADER,
        check.tol,
        "rel_err",
        notes=_first_notes(check) if first else (),
    )
    request = IdentityRequest(
        rho=check.rho,
        grid=tuple(check.grid),
        which=check.type,
        truncation=budget,
        flip_lambda4=first and check.flip_lambda4,
        smoothing=check.smoothing if first else "off",
    )
    for point in identity_report(L, request, threads):
        diagnostic = _identity_diagnostic(point)
        if first and check.perron is not None and point.ok:
            _add_perron(L, check, diagnostic)
        status: RowStatus = _judge(point.rel_err, check.tol) if point.ok else "error"
        report.add(_identity_row(point, names), status, diagnostic)
    return report


def fe_grid(L: CompletedL, check: FeCheck) -> list[complex]:
    low, high = check.sigma if check.sigma is not None else (-1.0, L.group.weight + 1.0)
    sigmas = np.linspace(low, high, check.n)
    heights = np.linspace(check.t[0], check.t[1], check.n)
    return [complex(float(sigma), float(t)) for sigma in sigmas for t in heights]


def run_fe(L: CompletedL, check: FeCheck, budget: EvalBudget) -> RunReport:
    """fe_residual on an n×n grid; points on a pole are skipped, not failed."""
    report = RunReport("verify-fe", FE_HEADER, check.tol, "residual")
    for s in fe_grid(L, check):
        try:
            residual = fe_residual(L, s, budget)
        except PoleError as error:
            logger.debug(f"verify-fe skips {s}: {error}")
            report.add((s.real, s.imag, math.nan), "skipped", {"point": _pair(s), "error": str(error)})
            continue
        except LabError as error:
            logger.error(f"fe_residual at {s} failed: {error}")
            report.add((s.real, s.imag, math.nan), "error", {"point": _pair(s), "error": str(error)})
            continue
        report.add((s.real, s.imag, residual), _judge(residual, check.tol), {"point": _pair(s)})
    return report


def run_residues(L: CompletedL, check: ResiduesCheck) -> RunReport:
    report = RunReport("residues", RESIDUES_HEADER, check.tol, "abs_err")
    for name in POLE_SET_NAMES:
        try:
            closed = residue_sum(L, name)
            oracle = residue_oracle_sum(L, name, check.radius, check.nodes)
        except LabError as error:
            logger.error(f"residues for {name} failed: {error}")
            report.add((name, *[math.nan] * 5), "error", {"set": name, "error": str(error)})
            continue
        error = abs(closed - oracle)
        row = (name, closed.real, closed.imag, oracle.real, oracle.imag, error)
        report.add(row, _judge(error, check.tol), {"set": name})
    return report


def run_kernels(L: CompletedL, check: KernelsCheck) -> RunReport:
    report = RunReport("kernels", KERNELS_HEADER, check.tol, "rel_err")
    for case in check.cases:
        try:
            result = verify_proof_kernels(L, case.selector, case.params)
        except LabError as error:
            logger.error(f"kernel {case.selector} failed: {error}")
            report.add((case.selector, *[math.nan] * 5, 0), "error", {"params": case.params, "error": str(error)})
            continue
        row = (
            case.selector,
            result.closed.real,
            result.closed.imag,
            result.quadrature.real,
            result.quadrature.imag,
            result.rel_err,
            result.components,
        )
        report.add(row, _judge(result.rel_err, check.tol), {"params": case.params})
    return report


def run(config: RunConfig, threads: int = 1) -> RunReport:
    """Build Φ for the config and evaluate its check; LabError before the first point propagates."""
    L = config.build()
    budget = config.budget.build()
    logger.info(f"{COMMAND_OF_CHECK[config.check.type]} on {L.series.label}, p={L.group.p}, 2k={L.group.weight}")
    match config.check:
        case FeCheck() as check:
            return run_fe(L, check, budget)
        case FirstCheck() | SecondCheck() as check:
            return run_identity(L, check, budget, threads)
        case ResiduesCheck() as check:
            return run_residues(L, check)
        case KernelsCheck() as check:
            return run_kernels(L, check)
    raise AssertionError(f"unhandled check {config.check}")
