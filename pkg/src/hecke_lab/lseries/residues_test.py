"""Tests for pole sets, residue sums and the contour oracle."""

import numpy as np
import pytest

from hecke_lab.automorphic import coeffs_eisenstein, coeffs_from_list, trivial_series
from hecke_lab.errors import PoleError
from hecke_lab.hecke_rpf import HeckeGroup, make_rpf, random_rpf
from hecke_lab.lseries.completed import CompletedL
from hecke_lab.lseries.residues import (
    POLE_SET_NAMES,
    contour_residue_oracle,
    pole_sets,
    residue_oracle_sum,
    residue_sum,
    vertical_growth_check,
)

MODULAR_K2 = HeckeGroup.from_p(3, 2)


@pytest.fixture(scope="module")
def e4():
    return CompletedL(MODULAR_K2, coeffs_eisenstein(4, 200))


def test_eisenstein_pole_sets(e4):
    sets = pole_sets(e4)
    assert sets.s0 == (0, 4)
    assert sets.s_e0 == sets.s_h == sets.s_b == ()
    assert sets.h_limit == 1


def test_block_pole_sets_follow_floor_delta():
    group = HeckeGroup.from_p(4, 2)
    L = CompletedL(group, trivial_series(0.0), make_rpf({3: 1.0}, {0.5: [1.0, 2.0, 3.0]}))
    sets = pole_sets(L)
    assert sets.s0 == ()
    assert sets.s_e0 == (1, 3)
    assert sets.h_limit == 1
    assert sets.s_h == (0, -1)
    assert sets.b_limits == {1: 4, 2: 3}
    assert sets.s_b == (-1, 0, 1, 2, 3)


def test_s0_residue_formula():
    L = CompletedL(MODULAR_K2, coeffs_from_list(1.0, [0.0], beta=1.0))
    assert residue_sum(L, "S0") == 0
    odd = CompletedL(HeckeGroup.from_p(3, 1), coeffs_from_list(1.0, [0.0], beta=1.0))
    assert residue_sum(odd, "S0") == -2


def test_s_e0_residue_formula():
    L = CompletedL(HeckeGroup.from_p(3, 1), trivial_series(0.0), make_rpf({1: 1.0}))
    assert residue_sum(L, "S_E0") == 2j


def test_oracle_vanishes_at_analytic_point(e4):
    assert abs(contour_residue_oracle(e4, 2 + 0.5j)) < 1e-10


def test_oracle_recovers_eisenstein_poles(e4):
    assert abs(contour_residue_oracle(e4, 0) - (-1)) < 1e-10
    assert abs(contour_residue_oracle(e4, 4) - 1) < 1e-10


def test_oracle_refuses_circle_through_pole(e4):
    with pytest.raises(PoleError):
        contour_residue_oracle(e4, 0.5, radius=0.5)


@pytest.mark.parametrize("which", POLE_SET_NAMES)
def test_residue_sums_match_oracle_for_eisenstein(e4, which):
    assert abs(residue_sum(e4, which) - residue_oracle_sum(e4, which)) < 1e-7


def test_residue_sums_match_oracle_for_random_configurations():
    rng = np.random.default_rng(17)
    for index in range(6):
        group = HeckeGroup.from_p((3, 4, 5, 6, "infinity", 3)[index], 1 + index % 3)
        series = coeffs_from_list(complex(rng.normal(), rng.normal()), rng.normal(size=4), beta=1.0)
        L = CompletedL(group, series, random_rpf(rng, group))
        for which in POLE_SET_NAMES:
            closed = residue_sum(L, which)
            assert abs(closed - residue_oracle_sum(L, which)) < 1e-7 * max(1.0, abs(closed)), (index, which)


def test_vertical_growth_check_for_eisenstein(e4):
    results = vertical_growth_check(e4, [0.5, 2.0, 3.5])
    assert [r.sigma for r in results] == [0.5, 2.0, 3.5]
    assert all(r.passed for r in results)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
