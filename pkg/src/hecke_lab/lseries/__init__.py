"""Completed Dirichlet series Φ(s), its continuation and its residues."""

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
    default_continuation,
    fe_residual,
    phi_continued,
    phi_dirichlet,
)
from hecke_lab.lseries.residues import (
    POLE_SET_NAMES,
    GrowthCheck,
    PoleSets,
    contour_residue_oracle,
    pole_sets,
    residue_oracle_sum,
    residue_sum,
    vertical_growth_check,
)

__all__ = [
    "D0",
    "E0",
    "EB",
    "EH",
    "POLE_SET_NAMES",
    "CompletedL",
    "ContinuationConfig",
    "D_integral",
    "GrowthCheck",
    "PoleSets",
    "R_closed_form",
    "R_of",
    "contour_residue_oracle",
    "default_continuation",
    "fe_residual",
    "phi_continued",
    "phi_dirichlet",
    "pole_sets",
    "residue_oracle_sum",
    "residue_sum",
    "vertical_growth_check",
]
