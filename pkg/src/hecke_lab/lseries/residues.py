"""Pole sets, closed-form residue sums and the contour oracle that checks them."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from typing import Literal, NamedTuple

from loguru import logger

from hecke_lab.errors import LabError, PoleError
from hecke_lab.lseries.completed import D0, E0, EB, EH, CompletedL, ipow, phi_continued
from hecke_lab.specialfn import pochhammer
from hecke_lab.specialfn.quadrature import circle_trapezoid

PoleSetName = Literal["S0", "S_E0", "S_H", "S_B"]
POLE_SET_NAMES: tuple[PoleSetName, ...] = ("S0", "S_E0", "S_H", "S_B")
ORACLE_RADIUS = 0.25
ORACLE_NODES = 64


class PoleSets(NamedTuple):
    s0: tuple[int, ...]
    s_e0: tuple[int, ...]
    s_h: tuple[int, ...]
    s_b: tuple[int, ...]
    h_limit: int
    b_limits: dict[int, int]

    def points(self, which: PoleSetName) -> tuple[int, ...]:
        return {"S0": self.s0, "S_E0": self.s_e0, "S_H": self.s_h, "S_B": self.s_b}[which]


def pole_sets(L: CompletedL) -> PoleSets:
    """Poles inside 2k - δ <= σ <= δ, grouped by the piece they come from.

    h_limit = floor(δ) - 2k bounds the E^H residues; b_limits[r] = floor(δ) - r
    bounds the E^B residues of index r.
    """
    k, weight = L.k, L.group.weight
    floor_delta = L.config.floor_delta
    h_limit = floor_delta - weight
    s0 = (0, weight) if L.series.a0 != 0 else ()
    s_e0 = tuple(sorted({p for t in L.rpf.zero_terms for p in (t.r, weight - t.r)}))
    b_limits: dict[int, int] = {}
    s_b: set[int] = set()
    for block in L.rpf.pole_blocks:
        for r in range(1, min(block.size, k) + 1):
            b_limits[r] = floor_delta - r
            s_b.update(weight - r - m for m in range(floor_delta - r + 1))
    s_h = tuple(-m for m in range(h_limit + 1)) if L.rpf.pole_blocks else ()
    return PoleSets(s0, s_e0, s_h, tuple(sorted(s_b)), h_limit, b_limits)


def residue_sum(L: CompletedL, which: PoleSetName) -> complex:
    """Closed-form total residue of the piece responsible for the named pole set."""
    k, weight, sign = L.k, L.group.weight, L.i_2k
    floor_delta = L.config.floor_delta
    match which:
        case "S0":
            return L.series.a0 * (sign - 1)
        case "S_E0":
            return sum((t.coeff * (-ipow(-t.r) + ipow(weight - t.r)) for t in L.rpf.zero_terms), 0j)
        case "S_H":
            total = 0j
            for block in L.rpf.pole_blocks:
                if block.size > k:
                    logger.warning(f"S_H residues keep r <= M={block.size}, beyond the r <= k={k} display")
                for r, coeff in enumerate(block.coeffs, start=1):
                    for m in range(floor_delta - weight + 1):
                        total += (
                            coeff * pochhammer(r, m) * (-1) ** r / math.factorial(m) * ipow(m) * block.alpha ** (-r - m)
                        )
            return -total
        case "S_B":
            total = 0j
            for block in L.rpf.pole_blocks:
                for r, coeff in enumerate(block.coeffs[:k], start=1):
                    for m in range(floor_delta - r + 1):
                        total += (
                            coeff
                            * pochhammer(r, m)
                            * (-1) ** (r + m)
                            / math.factorial(m)
                            * ipow(m + r - weight)
                            * block.alpha**m
                        )
            return total
    raise ValueError(f"unknown pole set {which!r}")


_PIECES: dict[str, Callable[[CompletedL, complex], complex]] = {
    "phi": phi_continued,
    "D0": D0,
    "E0": E0,
    "EH": EH,
    "EB": EB,
}
_PIECE_OF_SET: dict[PoleSetName, str] = {"S0": "D0", "S_E0": "E0", "S_H": "EH", "S_B": "EB"}


def contour_residue_oracle(
    L: CompletedL,
    s0: complex,
    radius: float = ORACLE_RADIUS,
    n: int = ORACLE_NODES,
    piece: str = "phi",
) -> complex:
    """(1/2πi)∮ piece(s) ds over |s - s0| = radius by the n-point trapezoid rule."""
    s0 = complex(s0)
    exclusion = L.config.pole_exclusion_radius
    for candidate in range(math.floor(s0.real - radius) - 1, math.ceil(s0.real + radius) + 2):
        if abs(abs(s0 - candidate) - radius) < exclusion:
            raise PoleError(f"circle |s - {s0}| = {radius} passes through the candidate pole {candidate}")
    func = _PIECES[piece]
    return circle_trapezoid(lambda s: func(L, s), s0, radius, n)


def residue_oracle_sum(L: CompletedL, which: PoleSetName, radius: float = ORACLE_RADIUS, n: int = ORACLE_NODES) -> complex:
    """Contour residues of the responsible piece summed over the distinct points of the set."""
    piece = _PIECE_OF_SET[which]
    return sum((contour_residue_oracle(L, p, radius, n, piece) for p in pole_sets(L).points(which)), 0j)


class GrowthCheck(NamedTuple):
    sigma: float
    near: float
    far: float
    passed: bool
    error: str | None = None


def vertical_growth_check(
    L: CompletedL,
    sigmas: Sequence[float],
    t_near: float = 20.0,
    t_far: float = 40.0,
    floor: float = 1e-10,
) -> list[GrowthCheck]:
    """Smoke test: max |Φ(σ ± i t_far)| <= 10 max(|Φ(σ ± i t_near)|, floor) on each σ."""
    results = []
    for sigma in sigmas:
        try:
            near = max(abs(phi_continued(L, complex(sigma, sign * t_near))) for sign in (1, -1))
            far = max(abs(phi_continued(L, complex(sigma, sign * t_far))) for sign in (1, -1))
        except LabError as error:
            logger.error(f"vertical growth check at sigma={sigma} failed: {error}")
            results.append(GrowthCheck(sigma, math.nan, math.nan, False, str(error)))
            continue
        results.append(GrowthCheck(sigma, near, far, far <= 10.0 * max(near, floor)))
    return results
