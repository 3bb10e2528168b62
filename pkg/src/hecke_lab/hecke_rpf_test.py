"""Tests for the Hecke group action and the rational period function family."""

import math

import numpy as np
import pytest

from hecke_lab.errors import DomainError, PoleError
from hecke_lab.hecke_rpf import (
    EMPTY_RPF,
    IDENTITY,
    GroupElement,
    HeckeGroup,
    T,
    check_cocycle_relation,
    check_T_relation,
    default_samples,
    eval_rpf,
    lambda_of,
    make_rpf,
    random_rpf,
    slash,
    translation,
    trivial_rpf,
    validate_rpf,
)


def test_lambda_values():
    assert abs(lambda_of(3) - 1.0) < 1e-15
    assert abs(lambda_of(4) - math.sqrt(2)) < 1e-15
    assert abs(lambda_of(6) - math.sqrt(3)) < 1e-15
    assert lambda_of("infinity") == 2.0


@pytest.mark.parametrize("bad", [2, 0, -3, "three"])
def test_lambda_rejects_bad_p(bad):
    with pytest.raises(DomainError):
        lambda_of(bad)


def test_group_element_requires_unit_determinant():
    with pytest.raises(AssertionError):
        GroupElement(1.0, 1.0, 1.0, 1.0)


def test_inversion_squares_to_minus_identity():
    square = T @ T
    assert (square.a, square.b, square.c, square.d) == (-1.0, 0.0, 0.0, -1.0)


@pytest.mark.parametrize("p", [3, 4, 5, 6, 8])
def test_generator_has_order_p_up_to_sign(p):
    group = HeckeGroup.from_p(p, 1)
    power = (translation(group) @ T).power(p)
    sign = power.a
    assert abs(abs(sign) - 1) < 1e-12
    assert abs(power.b) < 1e-12 and abs(power.c) < 1e-12
    assert abs(power.d - sign) < 1e-12


def test_slash_of_constant_by_inversion():
    group = HeckeGroup.from_p(3, 1)
    assert abs(slash(lambda _: 1.0, T, group, 1j) - (-1.0)) < 1e-15


def test_slash_identity_is_noop():
    group = HeckeGroup.from_p(4, 3)
    f = lambda z: z**3 + 2j  # noqa: E731
    z = 0.3 + 0.7j
    assert slash(f, IDENTITY, group, z) == f(z)


def test_slash_is_a_right_action():
    group = HeckeGroup.from_p(5, 2)
    f = lambda z: 1 / (z - 0.4) ** 2 + z  # noqa: E731
    first, second = translation(group) @ T, T @ translation(group).power(2)
    for z in default_samples(10):
        nested = slash(lambda w: slash(f, first, group, w), second, group, z)
        direct = slash(f, first @ second, group, z)
        assert abs(nested - direct) <= 1e-10 * (1 + abs(direct))


def test_slash_needs_upper_half_plane():
    group = HeckeGroup.from_p(3, 1)
    with pytest.raises(DomainError):
        slash(lambda z: z, T, group, 1.0 + 0j)


def test_trivial_rpf_formula():
    group = HeckeGroup.from_p(3, 2)
    q = trivial_rpf(1.0, group)
    assert abs(eval_rpf(q, group, 2j) - 0.9375) < 1e-15
    assert trivial_rpf(0.0, group) == EMPTY_RPF


@pytest.mark.parametrize(("p", "k"), [(3, 2), (3, 6), (4, 1), (5, 3), (6, 4)])
def test_trivial_rpf_satisfies_both_relations(p, k):
    group = HeckeGroup.from_p(p, k)
    q = trivial_rpf(0.7 - 0.2j, group)
    assert check_T_relation(q, group, default_samples(20)) < 1e-12
    assert check_cocycle_relation(q, group) < 1e-9


def test_cocycle_needs_finite_p():
    group = HeckeGroup.from_p("infinity", 2)
    with pytest.raises(DomainError):
        check_cocycle_relation(trivial_rpf(1.0, group), group)


def test_family_members_satisfy_T_relation():
    rng = np.random.default_rng(11)
    for p in (3, 4, 5, 6, "infinity"):
        for k in (1, 2, 3, 4):
            group = HeckeGroup.from_p(p, k)
            q = random_rpf(rng, group)
            validate_rpf(q, group)
            assert check_T_relation(q, group, default_samples(20, seed=k)) < 1e-9, (p, k, q)


def test_identity_map_fails_T_relation():
    group = HeckeGroup.from_p(3, 1)
    assert check_T_relation(lambda z: z, group, [1j]) < 1e-15
    assert check_T_relation(lambda z: z, group, [2j]) > 0.5


def test_eval_rpf_rejects_points_near_poles():
    group = HeckeGroup.from_p(4, 2)
    q = make_rpf({2: 1.0}, {1.0: [1.0, 0.5]})
    with pytest.raises(PoleError):
        eval_rpf(q, group, 1e-9j)
    with pytest.raises(PoleError):
        eval_rpf(q, group, 1 + 1e-9j)
    with pytest.raises(PoleError):
        eval_rpf(q, group, -1 + 1e-9j)


def test_eval_rpf_pole_block_by_hand():
    group = HeckeGroup.from_p(3, 1)
    q = make_rpf(pole_blocks={2.0: [3.0]})
    z = 0.5 + 1j
    expected = 3.0 * ((z - 2.0) ** -1 + 0.5 * z**-1 * (z + 0.5) ** -1)
    assert abs(eval_rpf(q, group, z) - expected) < 1e-14


def test_validate_rejects_small_zero_index():
    group = HeckeGroup.from_p(3, 3)
    with pytest.raises(DomainError):
        validate_rpf(make_rpf({2: 1.0}), group)


def test_degenerate_zero_term_is_identically_zero():
    group = HeckeGroup.from_p(3, 2)
    q = make_rpf({2: 1.0})
    validate_rpf(q, group)
    assert abs(eval_rpf(q, group, 0.3 + 0.9j)) < 1e-15


def test_rpf_invariants():
    with pytest.raises(AssertionError):
        make_rpf(pole_blocks={0.0: [1.0]})
    assert make_rpf({3: 1.0, 5: 2.0}).max_zero_index == 5
    assert EMPTY_RPF.is_empty


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
