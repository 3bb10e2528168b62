import math

import pytest

from hecke_lab.automorphic import coeffs_delta, coeffs_eisenstein, coeffs_from_list
from hecke_lab.errors import DomainError
from hecke_lab.hecke_rpf import HeckeGroup
from hecke_lab.identities import FIRST_TERM_NAMES, SECOND_TERM_NAMES, IdentityRequest, identity_report
from hecke_lab.lseries import CompletedL
from hecke_lab.specialfn import EvalBudget


@pytest.fixture(scope="module")
def e4():
    return CompletedL(HeckeGroup.from_p(3, 2), coeffs_eisenstein(4))


def test_empty_grid(e4):
    assert identity_report(e4, IdentityRequest(rho=5, grid=(), which="first")) == []


def test_first_identity_grid(e4):
    reports = identity_report(e4, IdentityRequest(rho=5, grid=(2.5, 5.5), which="first"))
    assert [r.point for r in reports] == [2.5, 5.5]
    for report in reports:
        assert report.ok
        assert tuple(report.rhs_terms) == FIRST_TERM_NAMES
        assert report.rel_err <= 1e-6
        assert report.extras["perron_delta"] == pytest.approx(report.lhs - report.point**5 / 120, rel=1e-12)


def test_smoothed_grid_reports_its_window(e4):
    request = IdentityRequest(rho=5, grid=(5.5,), which="first", smoothing="on")
    (report,) = identity_report(e4, request)
    assert report.rel_err <= 1e-6
    assert report.extras["window_sigma"] == pytest.approx(0.5 / 9)


def test_second_identity_grid():
    delta = CompletedL(HeckeGroup.from_p(3, 6), coeffs_delta())
    reports = identity_report(delta, IdentityRequest(rho=1, grid=(2.0, 5.0), which="second"))
    for report in reports:
        assert report.ok
        assert tuple(report.rhs_terms) == SECOND_TERM_NAMES
        assert report.rel_err <= 1e-8
        assert report.extras == {}


def test_failing_point_does_not_abort_the_grid(e4):
    # x = 30000 lies beyond the stored coefficients
    reports = identity_report(e4, IdentityRequest(rho=5, grid=(2.5, 30_000.5), which="first"))
    assert reports[0].ok
    failed = reports[1]
    assert not failed.ok
    assert failed.error.startswith("DomainError")
    assert math.isnan(failed.rel_err)
    assert tuple(failed.rhs_terms) == FIRST_TERM_NAMES


def test_unreachable_bessel_tolerance_is_an_error_row(e4):
    request = IdentityRequest(rho=5, grid=(2.5,), which="first", truncation=EvalBudget(max_terms=1000, rel_tol=1e-30))
    (failed,) = identity_report(e4, request)
    assert failed.error.startswith("BudgetExhaustedError")
    assert "both exceed rel_tol" in failed.error


def test_uncertifiable_point_is_captured():
    L = CompletedL(HeckeGroup.from_p(3, 2), coeffs_from_list(0.0, [1.0, 2.0, 3.0], beta=1.0))
    [report] = identity_report(L, IdentityRequest(rho=1, grid=(0.5,), which="second"))
    assert report.error.startswith("TruncationError")


def test_request_domain_is_checked_up_front(e4):
    with pytest.raises(DomainError):
        identity_report(e4, IdentityRequest(rho=2, grid=(2.5,), which="first"))


def test_threads_preserve_order(e4):
    grid = (1.5, 2.5, 3.5, 4.5)
    request = IdentityRequest(rho=5, grid=grid, which="first")
    serial = identity_report(e4, request)
    threaded = identity_report(e4, request, threads=3)
    assert [r.point for r in threaded] == list(grid)
    assert [r.rhs_total for r in threaded] == [r.rhs_total for r in serial]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
