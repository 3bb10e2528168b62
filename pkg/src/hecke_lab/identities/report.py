"""Grid orchestration: one PointReport per grid point, failures captured per point."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from loguru import logger

from hecke_lab.errors import LabError
from hecke_lab.identities.first import first_rhs_terms, perron_delta, riesz_lhs
from hecke_lab.identities.second import second_lhs, second_rhs_terms
from hecke_lab.identities.types import (
    FIRST_TERM_NAMES,
    SECOND_TERM_NAMES,
    IdentityRequest,
    PointReport,
    check_first_request,
    check_second_request,
)
from hecke_lab.lseries import CompletedL

# The first identity as stated drops -a₀x^ρ/Γ(ρ+1); it is kept on the left here.
FIRST_IDENTITY_NOTE = "lhs includes the m = 0 Riesz term a0 x^rho / Gamma(rho + 1); perron_delta omits it"
SMOOTHING_NOTE = "with smoothing, L1 … L5 are averages over a Gaussian window around x (extras.window_sigma); lhs is pointwise"


def _evaluate(L: CompletedL, request: IdentityRequest, point: float) -> PointReport:
    budget = request.truncation
    if request.which == "first":
        lhs = riesz_lhs(L, point, request.rho)
        rhs = first_rhs_terms(
            L, point, request.rho, budget, flip_lambda4=request.flip_lambda4, smoothing=request.smoothing
        )
        extras = {"perron_delta": perron_delta(L, point, request.rho)}
        if rhs.window_sigma is not None:
            extras["window_sigma"] = complex(rhs.window_sigma)
    else:
        lhs = second_lhs(L, point, request.rho, budget)
        rhs = second_rhs_terms(L, point, request.rho, budget)
        extras = {}
    total = rhs.total
    abs_err = abs(total - lhs)
    return PointReport(
        point=point,
        lhs=lhs,
        rhs_terms=rhs.terms,
        rhs_total=total,
        abs_err=abs_err,
        rel_err=abs_err / max(abs(lhs), budget.abs_floor),
        terms_used=rhs.terms_used,
        warnings=rhs.warnings,
        extras=extras,
    )


def _failed(request: IdentityRequest, point: float, error: LabError) -> PointReport:
    names = FIRST_TERM_NAMES if request.which == "first" else SECOND_TERM_NAMES
    nan = complex(float("nan"), float("nan"))
    return PointReport(
        point=point,
        lhs=nan,
        rhs_terms=dict.fromkeys(names, nan),
        rhs_total=nan,
        abs_err=float("nan"),
        rel_err=float("nan"),
        terms_used=0,
        error=f"{type(error).__name__}: {error}",
    )


def identity_report(L: CompletedL, request: IdentityRequest, threads: int = 1) -> list[PointReport]:
    """Evaluate the requested identity on every grid point; never aborts the grid."""
    if request.which == "first":
        check_first_request(L, request.rho)
    else:
        check_second_request(L, request.rho)

    def evaluate(point: float) -> PointReport:
        try:
            return _evaluate(L, request, point)
        except LabError as error:
            logger.error(f"{request.which} identity at {point} failed: {error}")
            return _failed(request, point, error)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(evaluate, request.grid))
    else:
        reports = [evaluate(point) for point in request.grid]
    logger.info(f"{request.which} identity: {sum(r.ok for r in reports)}/{len(reports)} points evaluated")
    return reports
