"""Tests for the quadrature wrappers."""

import cmath
import math

import numpy as np
import pytest
from scipy import special

from hecke_lab.errors import BudgetExhaustedError
from hecke_lab.specialfn.quadrature import circle_trapezoid, complex_quad, line_trapezoid


def test_complex_quad_oscillatory_exponential():
    result = complex_quad(lambda x: cmath.exp(1j * x), 0.0, math.pi)
    assert abs(result.value - 2j) < 1e-13
    assert result.error < 1e-10


def test_complex_quad_reports_failure():
    with pytest.raises(BudgetExhaustedError):
        complex_quad(lambda x: math.cos(200 * x), 0.0, 10.0, limit=1)


def test_circle_trapezoid_simple_pole():
    assert abs(circle_trapezoid(lambda s: 3 / (s - 0.1), 0j, 0.5, 32) - 3) < 1e-14


def test_circle_trapezoid_analytic_integrand():
    assert abs(circle_trapezoid(lambda s: cmath.exp(s) * s**2, 1 + 1j, 0.7, 48)) < 1e-14


def test_line_trapezoid_mellin_inversion_of_gamma():
    x = 2.0
    value = line_trapezoid(lambda s: special.gamma(s) * x ** (-s), 1.0, 40.0, 0.05)
    assert abs(value - math.exp(-x)) < 1e-12


def test_line_trapezoid_node_count():
    seen = []

    def record(s: np.ndarray) -> np.ndarray:
        seen.append(s.size)
        return np.zeros_like(s)

    line_trapezoid(record, 2.0, 1.0, 0.25)
    assert seen == [9]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
