"""Exceptions raised for domain failures the caller is expected to handle.

Broken internal contracts are asserts, not exceptions.
"""


class LabError(Exception):
    """Base class for every recoverable failure in hecke_lab."""


class PoleError(LabError):
    """Evaluation at (or within the exclusion radius of) a pole."""


class DomainError(LabError):
    """Argument outside the domain where the formula is valid."""


class BudgetExhaustedError(LabError):
    """A series or quadrature did not converge within its budget."""


class TruncationError(LabError):
    """A truncated sum cannot be certified with the stored coefficients."""


class ConfigError(LabError):
    """Run configuration could not be parsed or violates an invariant."""
