"""Special-function kernel: Γ, B, J_ν, ₁F₁, ₂F₁, Ψ and a ζ oracle."""

from hecke_lab.specialfn.bessel import bessel_j, bessel_j_many
from hecke_lab.specialfn.budget import DEFAULT_BUDGET, EvalBudget
from hecke_lab.specialfn.gamma import beta_fn, gamma, loggamma, pochhammer, rgamma
from hecke_lab.specialfn.hypergeometric import hyp1f1, hyp1f1_series, hyp2f1, tricomi_u
from hecke_lab.specialfn.summation import DoubleDouble, NeumaierAccumulator, compensated_sum
from hecke_lab.specialfn.zeta import bernoulli_numbers, zeta

__all__ = [
    "DEFAULT_BUDGET",
    "DoubleDouble",
    "EvalBudget",
    "NeumaierAccumulator",
    "bernoulli_numbers",
    "bessel_j",
    "bessel_j_many",
    "beta_fn",
    "compensated_sum",
    "gamma",
    "hyp1f1",
    "hyp1f1_series",
    "hyp2f1",
    "loggamma",
    "pochhammer",
    "rgamma",
    "tricomi_u",
    "zeta",
]
