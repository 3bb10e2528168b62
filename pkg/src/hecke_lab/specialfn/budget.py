"""Truncation budget shared by every series and quadrature in the package."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class EvalBudget:
    """Series truncation cap, target relative accuracy and underflow guard."""

    max_terms: int = 5000
    rel_tol: float = 1e-14
    abs_floor: float = 1e-300

    def __post_init__(self) -> None:
        assert self.max_terms >= 1, f"max_terms must be >= 1, got {self.max_terms}"
        assert 0.0 < self.rel_tol < 1.0, f"rel_tol must lie in (0, 1), got {self.rel_tol}"
        assert self.abs_floor > 0.0, f"abs_floor must be positive, got {self.abs_floor}"

    def with_overrides(self, *, max_terms: int | None = None, rel_tol: float | None = None) -> EvalBudget:
        return replace(
            self,
            max_terms=self.max_terms if max_terms is None else max_terms,
            rel_tol=self.rel_tol if rel_tol is None else rel_tol,
        )

    def relative_error(self, value: complex, reference: complex) -> float:
        return abs(value - reference) / max(abs(reference), self.abs_floor)


DEFAULT_BUDGET = EvalBudget()
