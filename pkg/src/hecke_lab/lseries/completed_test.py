"""Tests for Φ(s), the five continuation pieces and the functional equation."""

import cmath
import math

import numpy as np
import pytest

from hecke_lab.automorphic import coeffs_delta, coeffs_eisenstein, coeffs_from_list, trivial_series
from hecke_lab.errors import DomainError, PoleError
from hecke_lab.hecke_rpf import EMPTY_RPF, HeckeGroup, make_rpf, random_rpf, trivial_rpf
from hecke_lab.lseries.completed import (
    D0,
    E0,
    EB,
    EH,
    CompletedL,
    ContinuationConfig,
    D_integral,
    R_closed_form,
    R_of,
    fe_residual,
    phi_continued,
    phi_dirichlet,
)
from hecke_lab.specialfn import gamma, zeta

MODULAR_K2 = HeckeGroup.from_p(3, 2)
MODULAR_K6 = HeckeGroup.from_p(3, 6)


@pytest.fixture(scope="module")
def e4():
    return CompletedL(MODULAR_K2, coeffs_eisenstein(4, 2000))


@pytest.fixture(scope="module")
def delta():
    return CompletedL(MODULAR_K6, coeffs_delta(2000))


def _e4_phi_exact(s: float) -> float:
    return (2 * math.pi) ** (-s) * gamma(s).real * 240 * zeta(s).real * zeta(s - 3).real


def _random_pair(rng: np.random.Generator, group: HeckeGroup) -> CompletedL:
    coeffs = rng.normal(size=5) + 1j * rng.normal(size=5)
    series = coeffs_from_list(complex(rng.normal(), rng.normal()), coeffs, beta=1.0, finite=True)
    return CompletedL(group, series, random_rpf(rng, group))


def _random_points(rng: np.random.Generator, k: int, count: int = 20) -> list[complex]:
    sigmas = rng.uniform(-1.5, 2 * k + 1.5, count)
    heights = rng.uniform(0.5, 3.0, count) * rng.choice([-1, 1], count)
    return [complex(x, t) for x, t in zip(sigmas, heights, strict=True)]


def test_default_strip():
    assert CompletedL(MODULAR_K2, coeffs_eisenstein(4, 10)).config.delta_strip == pytest.approx(5.8)
    assert CompletedL(MODULAR_K6, coeffs_delta(10)).config.delta_strip == pytest.approx(13.55)


@pytest.mark.parametrize("delta_strip", [3.9, 6.0, 5.0005])
def test_strip_invariants(delta_strip):
    with pytest.raises(DomainError):
        CompletedL(MODULAR_K2, coeffs_eisenstein(4, 10), config=ContinuationConfig(delta_strip=delta_strip))


def test_phi_dirichlet_of_constant_series_is_zero():
    L = CompletedL(MODULAR_K2, coeffs_from_list(3.0, [0.0, 0.0], beta=1.0))
    assert phi_dirichlet(L, 4 + 1j) == 0


def test_phi_dirichlet_eisenstein_matches_zeta_product():
    L = CompletedL(MODULAR_K2, coeffs_eisenstein(4))
    assert phi_dirichlet(L, 6) == pytest.approx(_e4_phi_exact(6), rel=1e-8)


def test_phi_dirichlet_far_from_abscissa(e4):
    assert phi_dirichlet(e4, 7) == pytest.approx(_e4_phi_exact(7), rel=1e-9)


def test_phi_dirichlet_rejects_small_real_part(e4):
    with pytest.raises(DomainError):
        phi_dirichlet(e4, 5 + 3j)


def test_phi_dirichlet_delta_is_stable(delta):
    doubled = CompletedL(MODULAR_K6, coeffs_delta(4000))
    assert abs(phi_dirichlet(delta, 14) - phi_dirichlet(doubled, 14)) <= 1e-12 * abs(phi_dirichlet(doubled, 14))


def test_continuation_equals_zeta_product(e4):
    assert phi_continued(e4, 6) == pytest.approx(_e4_phi_exact(6), rel=1e-9)


@pytest.mark.parametrize("s", [7, 8, 7.5 + 2j])
def test_continuation_equals_dirichlet_series(e4, s):
    expected = phi_dirichlet(e4, s)
    assert abs(phi_continued(e4, s) - expected) <= 1e-9 * abs(expected)


def test_continuation_of_delta_at_fourteen(delta):
    expected = phi_dirichlet(delta, 14)
    assert abs(phi_continued(delta, 14) - expected) <= 1e-9 * abs(expected)


def test_hecke_split_at_six(e4):
    assert abs(D_integral(e4, 6) + D0(e4, 6) - phi_dirichlet(CompletedL(MODULAR_K2, coeffs_eisenstein(4)), 6)) < 1e-9


def test_d_integral_trivial_and_conjugate(e4):
    assert D_integral(CompletedL(MODULAR_K2, trivial_series(2.0)), 1 + 1j) == 0
    s = 3 + 2j
    assert abs(D_integral(e4, s.conjugate()) - D_integral(e4, s).conjugate()) < 1e-12


def test_d0_arithmetic_and_symmetry():
    L = CompletedL(MODULAR_K2, coeffs_from_list(1.0, [0.0], beta=1.0))
    assert D0(L, 2) == pytest.approx(-1.0)
    s = 1.3 + 0.7j
    assert abs(D0(L, 4 - s) - D0(L, s)) < 1e-15
    with pytest.raises(PoleError):
        D0(L, 4 + 1e-4j)


def test_e0_single_term():
    group = HeckeGroup.from_p(3, 1)
    L = CompletedL(group, trivial_series(0.0), make_rpf({1: 1.0}))
    assert abs(E0(L, 0.5) - (-4j)) < 1e-14
    assert E0(CompletedL(group, trivial_series(0.0)), 0.5) == 0


def test_eb_single_block_closed_value():
    group = HeckeGroup.from_p(3, 1)
    L = CompletedL(group, trivial_series(0.0), make_rpf(pole_blocks={1.0: [1.0]}))
    assert abs(EB(L, 0.5) - (-math.pi * cmath.exp(0.75j * math.pi))) < 1e-13


def test_eb_conjugation_flips_alpha():
    group = HeckeGroup.from_p(4, 2)
    coeffs = [0.7, -1.3]
    L = CompletedL(group, trivial_series(0.0), make_rpf(pole_blocks={1.7: coeffs}))
    flipped = CompletedL(
        group, trivial_series(0.0), make_rpf(pole_blocks={-1.7: [c * (-1) ** r for r, c in enumerate(coeffs, 1)]})
    )
    s = 0.3 + 1.1j
    assert abs(EB(L, s.conjugate()).conjugate() - EB(flipped, s)) <= 1e-12 * abs(EB(flipped, s))


def _gauss_one_one(c: complex, w: complex, terms: int = 400) -> complex:
    total, term = 0j, 1 + 0j
    for n in range(terms):
        total += term
        term *= (n + 1) / (c + n) * w
    return total


def test_eh_matches_direct_series():
    group = HeckeGroup.from_p(3, 1)
    L = CompletedL(group, trivial_series(0.0), make_rpf(pole_blocks={1.0: [1.0]}))
    w = 1 / (1j + 1)
    s = 0.5
    bracket = _gauss_one_one(1 + s, w) / s - _gauss_one_one(3 - s, w) / (2 - s)
    assert abs(EH(L, s) - (1j * w * bracket)) < 1e-12
    with pytest.raises(PoleError):
        EH(L, 2.0)


def test_empty_input_vanishes_everywhere():
    L = CompletedL(MODULAR_K2, coeffs_from_list(0.0, [0.0], beta=1.0), EMPTY_RPF)
    for s in (0.5 + 0.5j, 3.3, -1.2 + 4j):
        assert phi_continued(L, s) == 0
        assert fe_residual(L, s) == 0


@pytest.mark.parametrize("p", [3, 5, "infinity"])
def test_trivial_pair_cancels_exactly(p):
    group = HeckeGroup.from_p(p, 2)
    L = CompletedL(group, trivial_series(1.5 - 0.5j), trivial_rpf(1.5 - 0.5j, group))
    for s in (0.5 + 0.5j, 2.2 - 1j, 5.1):
        assert abs(phi_continued(L, s)) < 1e-13


def test_piece_symmetries_on_random_configurations():
    rng = np.random.default_rng(2024)
    for p in (3, 4, 6, "infinity", 5):
        for k in (1, 2):
            group = HeckeGroup.from_p(p, k)
            L = _random_pair(rng, group)
            for s in _random_points(rng, k, 4):
                mirror = 2 * k - s
                for piece in (D_integral, D0, E0, EH):
                    value = piece(L, s)
                    assert abs(piece(L, mirror) - group.i_2k * value) <= 1e-9 * (1 + abs(value)), (piece, s)


def test_fe_residual_reduces_to_beta_piece():
    rng = np.random.default_rng(99)
    for k in (1, 2, 3):
        group = HeckeGroup.from_p(4, k)
        L = _random_pair(rng, group)
        for s in _random_points(rng, k, 3):
            assert fe_residual(L, s) <= 1e-9


def test_r_vanishes_without_pole_blocks(e4):
    assert R_of(e4, 1.3 + 0.4j) == 0


def test_r_antisymmetry_and_closed_form():
    rng = np.random.default_rng(5)
    group = HeckeGroup.from_p(5, 2)
    L = CompletedL(group, trivial_series(0.0), make_rpf(pole_blocks={0.8: [1.0, 0.5 - 0.2j], 2.3: [-0.4j]}))
    for s in _random_points(rng, 2):
        value = R_of(L, s)
        assert abs(R_of(L, 4 - s) + group.i_2k * value) <= 1e-9 * (1 + abs(value))
        assert abs(R_closed_form(L, s) - value) <= 1e-9 * (1 + abs(value))


def test_r_of_negative_alpha_skips_closed_form():
    group = HeckeGroup.from_p(3, 1)
    L = CompletedL(group, trivial_series(0.0), make_rpf(pole_blocks={-1.2: [1.0]}))
    s = 0.4 + 0.9j
    assert R_of(L, s) == EB(L, 2 - s) - group.i_2k * EB(L, s)


def test_fe_residual_eisenstein_grid(e4):
    for sigma in range(-1, 6):
        for t in range(-3, 4):
            if t == 0 and sigma in (0, 4):
                continue
            assert fe_residual(e4, complex(sigma, t)) <= 1e-8, (sigma, t)


def test_fe_residual_delta(delta):
    assert fe_residual(delta, 6 + 10j) <= 1e-8
    assert fe_residual(delta, 2.5 - 1j) <= 1e-8


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
