"""Tests for Gamma, Beta and friends."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from hecke_lab.errors import PoleError
from hecke_lab.specialfn.gamma import beta_fn, gamma, loggamma, pochhammer, rgamma


def _strip_sample(count: int = 100) -> list[complex]:
    rng = np.random.default_rng(20240611)
    points: list[complex] = []
    while len(points) < count:
        z = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        if abs(z - round(z.real)) >= 0.1:
            points.append(z)
    return points


def test_gamma_trivial_values():
    assert abs(gamma(1) - 1) < 1e-12
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-12
    assert abs(gamma(4 + 0j) - 6) < 1e-12


def test_gamma_matches_mpmath():
    for z in (0.1, 2.5 + 1j, -1.5, -3.7 + 0.2j, 12.25, 3 - 4j):
        expected = complex(mpmath.gamma(z))
        assert abs(gamma(z) / expected - 1) < 1e-13, z


def test_reflection_formula():
    for z in _strip_sample():
        product = gamma(z) * gamma(1 - z) * cmath.sin(math.pi * z) / math.pi
        assert abs(product - 1) < 1e-12, z


def test_recurrence():
    for z in _strip_sample():
        assert abs(gamma(z + 1) / (z * gamma(z)) - 1) < 1e-12, z


def test_poles_raise():
    for z in (0, -1, -7, -2 + 1e-17j):
        with pytest.raises(PoleError):
            gamma(z)


def test_rgamma_vanishes_at_poles():
    assert rgamma(0) == 0
    assert rgamma(-3) == 0
    assert abs(rgamma(5) - 1 / 24) < 1e-15


@pytest.mark.parametrize("n", [1, 2, 5, 11, 23, 60])
def test_integer_arguments_are_exact_factorials(n):
    assert gamma(n) == float(math.factorial(n - 1))
    assert gamma(float(n) + 0j) == gamma(n)
    assert rgamma(n) == 1.0 / math.factorial(n - 1)
    assert gamma(n + 1e-9) != gamma(n)


def test_loggamma_exponentiates_to_gamma():
    z = -2.5 + 0.3j
    assert abs(cmath.exp(loggamma(z)) / complex(mpmath.gamma(z)) - 1) < 1e-13


def test_beta_fn():
    assert abs(beta_fn(1, 1) - 1) < 1e-12
    assert abs(beta_fn(2, 3) - 1 / 12) < 1e-12
    assert abs(beta_fn(0.5, 0.5) - math.pi) < 1e-12
    expected = complex(mpmath.beta(1.5, -0.5 + 0.25j))
    assert abs(beta_fn(1.5, -0.5 + 0.25j) / expected - 1) < 1e-12


def test_beta_fn_pole_of_sum():
    with pytest.raises(PoleError):
        beta_fn(0.5, -0.5)


def test_pochhammer():
    assert pochhammer(3, 0) == 1
    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert pochhammer(-2, 3) == 0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
