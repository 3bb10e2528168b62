"""Both arithmetical identities, the Perron oracle and the proof-kernel checks."""

from hecke_lab.identities.first import first_rhs_terms, perron_delta, riesz_lhs
from hecke_lab.identities.kernels import KERNEL_SELECTORS, KernelCheck, verify_proof_kernels
from hecke_lab.identities.perron import PerronResult, perron_oracle
from hecke_lab.identities.report import FIRST_IDENTITY_NOTE, SMOOTHING_NOTE, identity_report
from hecke_lab.identities.second import second_lhs, second_rhs_terms
from hecke_lab.identities.types import (
    FIRST_TERM_NAMES,
    SECOND_TERM_NAMES,
    IdentityRequest,
    IdentityTerms,
    PointReport,
    Smoothing,
    check_first_request,
    check_second_request,
    first_rho_violation,
    second_rho_violation,
    second_y_bound,
    second_y_violation,
)

__all__ = [
    "FIRST_IDENTITY_NOTE",
    "FIRST_TERM_NAMES",
    "KERNEL_SELECTORS",
    "SECOND_TERM_NAMES",
    "SMOOTHING_NOTE",
    "IdentityRequest",
    "IdentityTerms",
    "KernelCheck",
    "PerronResult",
    "PointReport",
    "Smoothing",
    "check_first_request",
    "check_second_request",
    "first_rho_violation",
    "first_rhs_terms",
    "identity_report",
    "perron_delta",
    "perron_oracle",
    "riesz_lhs",
    "second_lhs",
    "second_rho_violation",
    "second_rhs_terms",
    "second_y_bound",
    "second_y_violation",
    "verify_proof_kernels",
]
