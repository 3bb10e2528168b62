"""Tests for the Perron-formula oracle."""

import math

import pytest

from hecke_lab.automorphic import coeffs_delta, coeffs_eisenstein, coeffs_from_list
from hecke_lab.errors import DomainError
from hecke_lab.hecke_rpf import HeckeGroup
from hecke_lab.identities.first import riesz_lhs
from hecke_lab.identities.perron import perron_oracle
from hecke_lab.lseries import CompletedL

MODULAR_K2 = HeckeGroup.from_p(3, 2)


@pytest.fixture(scope="module")
def e4():
    return CompletedL(MODULAR_K2, coeffs_eisenstein(4, 2000))


def test_zero_series_gives_zero():
    L = CompletedL(MODULAR_K2, coeffs_from_list(0.0, [0.0] * 10, beta=1.0))
    result = perron_oracle(L, 5.5, 2, sigma=3.0, T=50.0)
    assert result.value == 0
    assert result.n_terms == 0


def test_eisenstein_matches_riesz_mean(e4):
    result = perron_oracle(e4, 5.5, 5, sigma=6.0, T=150.0)
    expected = riesz_lhs(e4, 5.5, 5)
    assert abs(result.value - expected) <= 1e-3 * abs(expected)
    assert abs(result.value - expected) <= result.envelope


def test_integral_excludes_constant_term(e4):
    result = perron_oracle(e4, 5.5, 5, sigma=6.0, T=150.0)
    assert result.value - result.integral == pytest.approx(5.5**5 / 120, rel=1e-10)


def test_delta_matches_riesz_mean():
    L = CompletedL(HeckeGroup.from_p(3, 6), coeffs_delta(500))
    expected = riesz_lhs(L, 3.5, 3)
    assert expected.real == pytest.approx((2.5**3 - 24 * 1.5**3 + 252 * 0.5**3) / 6, rel=1e-14)
    result = perron_oracle(L, 3.5, 3, sigma=8.0, T=150.0)
    assert abs(result.value - expected) <= 1e-3 * abs(expected)


def test_envelope_shrinks_like_power_of_height(e4):
    short = perron_oracle(e4, 2.5, 5, sigma=6.0, T=150.0)
    long = perron_oracle(e4, 2.5, 5, sigma=6.0, T=300.0)
    assert short.envelope / long.envelope == pytest.approx(2**5, rel=1e-12)
    expected = riesz_lhs(e4, 2.5, 5)
    assert abs(long.value - expected) <= long.envelope


def test_envelope_is_infinite_without_smoothing(e4):
    assert math.isinf(perron_oracle(e4, 2.5, 0, sigma=6.0, T=20.0).envelope)


def test_abscissa_is_enforced(e4):
    with pytest.raises(DomainError):
        perron_oracle(e4, 5.5, 5, sigma=5.0, T=150.0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
