"""Tests for the exponential-sum identity and its closed-form left side."""

import math

import mpmath
import numpy as np
import pytest

from hecke_lab.automorphic import coeffs_delta, coeffs_eisenstein, coeffs_from_list, ramanujan_tau, trivial_series
from hecke_lab.errors import DomainError, TruncationError
from hecke_lab.hecke_rpf import HeckeGroup, make_rpf, trivial_rpf
from hecke_lab.identities.second import operator_polynomials, psi1_term, psi2_term, second_lhs, second_rhs_terms
from hecke_lab.lseries import CompletedL

MODULAR_K2 = HeckeGroup.from_p(3, 2)
PADDING = 5000


def padded(a0, head, beta=1.0, size=PADDING):
    return coeffs_from_list(a0, list(head) + [0.0] * (size - len(head)), beta=beta)


def operator_oracle(head, y, rho):
    """(-1/y d/dy)^ρ ((1/y) Σ a_m e^{-y√m}) as (-d/du)^ρ in u = y²/2, numerically differentiated."""
    with mpmath.workdps(30):

        def f(u):
            t = mpmath.sqrt(2 * u)
            return mpmath.fsum(a * mpmath.exp(-t * mpmath.sqrt(m)) for m, a in enumerate(head, start=1)) / t

        return complex((-1) ** rho * mpmath.diff(f, mpmath.mpf(y) ** 2 / 2, rho))


def test_operator_polynomials_single_step():
    poly = operator_polynomials(np.array([1.0, 2.0]), 1)
    assert poly.shape == (4, 2)
    np.testing.assert_array_equal(poly[2], [1.0, 2.0])
    np.testing.assert_array_equal(poly[3], [1.0, 1.0])
    np.testing.assert_array_equal(poly[:2], 0.0)


def test_single_coefficient_hand_value():
    # (-1/y d/dy)(e^{-y}/y) = e^{-y}(1/y² + 1/y³)
    L = CompletedL(MODULAR_K2, padded(0.0, [1.0]))
    assert second_lhs(L, 1.0, 1) == pytest.approx(2.0 / math.e, rel=1e-14)


def test_rho_zero_is_the_plain_sum():
    head = [1.0, -2.0, 0.5]
    L = CompletedL(MODULAR_K2, padded(0.0, head))
    y = 2.0
    expected = sum(a * math.exp(-y * math.sqrt(m)) for m, a in enumerate(head, start=1)) / y
    assert second_lhs(L, y, 0) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("rho", [1, 2, 3, 4])
def test_operator_matches_numerical_differentiation(rho):
    head = np.random.default_rng(2024).normal(size=5).tolist()
    L = CompletedL(MODULAR_K2, padded(0.0, head))
    assert second_lhs(L, 2.0, rho) == pytest.approx(operator_oracle(head, 2.0, rho), rel=1e-9, abs=1e-12)


def test_cancellation_falls_back_to_extended_precision():
    # e^{-1} - fl(e) e^{-2} is pure rounding error in double precision
    L = CompletedL(MODULAR_K2, padded(0.0, [1.0, 0.0, 0.0, -math.e], size=20_000))
    with mpmath.workdps(40):
        expected = complex(mpmath.exp(-1) - mpmath.mpf(math.e) * mpmath.exp(-2))
    assert second_lhs(L, 1.0, 0) == pytest.approx(expected, rel=1e-10)


def test_short_coefficient_list_is_not_certifiable():
    L = CompletedL(MODULAR_K2, coeffs_from_list(0.0, [1.0, 2.0, 3.0], beta=1.0))
    with pytest.raises(TruncationError):
        second_lhs(L, 0.5, 1)


@pytest.fixture(scope="module")
def e4():
    return CompletedL(MODULAR_K2, coeffs_eisenstein(4))


@pytest.fixture(scope="module")
def delta():
    return CompletedL(HeckeGroup.from_p(3, 6), coeffs_delta())


@pytest.mark.parametrize("y", [2.0, 3.0])
def test_eisenstein_identity(e4, y):
    rhs = second_rhs_terms(e4, y, 1)
    assert rhs.terms["psi1"] == rhs.terms["psi2"] == rhs.terms["gammapair"] == 0
    lhs = second_lhs(e4, y, 1)
    assert abs(rhs.total - lhs) <= 1e-8 * abs(lhs)


@pytest.mark.parametrize("y", [1.0, 2.0, 5.0])
def test_delta_identity(delta, y):
    rhs = second_rhs_terms(delta, y, 1)
    assert rhs.terms["a0term"] == rhs.terms["extra"] == 0
    lhs = second_lhs(delta, y, 1)
    assert abs(rhs.terms["resolvent"] - lhs) <= 1e-8 * abs(lhs)


def test_delta_left_side_is_summed_with_exact_tau(delta):
    series = delta.series
    assert series.exact == ramanujan_tau(series.m_max)
    assert any(int(value) != tau for value, tau in zip(series.coeffs.real, series.exact, strict=True))
    # at y = 1 the sum is ~1e-10 of its terms, so the rounded float τ would show at 1e-8
    assert second_lhs(delta, 1.0, 1) == pytest.approx(0.00023544420874315582, rel=1e-10)


@pytest.mark.parametrize("p", [3, 4, "infinity"])
@pytest.mark.parametrize("rho", [0, 1, 2])
def test_trivial_pair_cancels(p, rho):
    group = HeckeGroup.from_p(p, 2)
    alpha0 = 1.5 + 0.5j
    L = CompletedL(group, trivial_series(alpha0), trivial_rpf(alpha0, group))
    rhs = second_rhs_terms(L, 3.0, rho)
    assert second_lhs(L, 3.0, rho) == 0
    assert rhs.terms["resolvent"] == 0
    scale = max(abs(rhs.terms["a0term"]), abs(rhs.terms["extra"]))
    assert abs(rhs.total) <= 1e-13 * scale


def test_resolvent_is_linear_in_coefficients(e4):
    doubled = CompletedL(MODULAR_K2, e4.series.scaled(2.0))
    once, twice = second_rhs_terms(e4, 2.5, 1), second_rhs_terms(doubled, 2.5, 1)
    for name in ("a0term", "resolvent", "extra"):
        assert twice.terms[name] == pytest.approx(2 * once.terms[name], rel=1e-14)


def test_psi2_keeps_only_orders_up_to_k():
    group = HeckeGroup.from_p(3, 1)
    series = padded(0.0, [0.0])
    upper_only = CompletedL(group, series, make_rpf(pole_blocks={1.0: [0.0, 1.0]}))
    assert psi2_term(upper_only, 8.0, 1) == 0
    assert psi1_term(upper_only, 8.0, 1) != 0


def test_y_domain_is_named():
    group = HeckeGroup.from_p(3, 1)
    L = CompletedL(group, padded(0.0, [1.0]), make_rpf(pole_blocks={1.0: [1.0]}))
    with pytest.raises(DomainError, match=r"y > max\(2\*pi\*alpha/lambda, 2\*pi/\(alpha\*lambda\)\) violated"):
        second_rhs_terms(L, 5.0, 1)


def test_rho_domain_is_named(e4):
    with pytest.raises(DomainError, match=r"rho \+ 2k >= beta \+ 1/2 violated"):
        second_rhs_terms(e4, 3.0, 0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
