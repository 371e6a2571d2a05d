"""Shared exception types."""

from __future__ import annotations

__all__ = [
    "ProdoneError",
    "GroupTableError",
    "ParseError",
    "CatalogError",
    "BudgetExceededError",
]


class ProdoneError(Exception):
    """Base class for errors raised by this package."""


class GroupTableError(ProdoneError):
    """A Cayley table failed validation (identity, Latin square, or associativity)."""


class ParseError(ProdoneError):
    """A group spec, sequence text, table file, or cache file could not be parsed."""


class CatalogError(ProdoneError):
    """An atom catalog is missing, stale, or insufficient for the requested operation."""


class BudgetExceededError(ProdoneError):
    """A dynamic-programming or search budget was exhausted.

    Attributes:
        attempted: number of states the computation would have needed (or had
            created when it gave up).
        budget: the cap that was in force.
        partial: optional partial result, explicitly flagged non-exhaustive.
    """

    def __init__(self, message: str, *, attempted: int | None = None,
                 budget: int | None = None, partial=None):
        super().__init__(message)
        self.attempted = attempted
        self.budget = budget
        self.partial = partial
