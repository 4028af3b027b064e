"""Exception types shared across the package."""


class LotError(Exception):
    """Base class for all lotkit errors."""


class ParseError(LotError, ValueError):
    """Malformed DSL or word text."""


class ValidationError(LotError, ValueError):
    """Structurally invalid input (unknown symbol, non-tree, bad label...)."""


class BudgetExceeded(LotError):
    """A semi-decision procedure ran out of its work budget.

    This is never a mathematical verdict; callers report it as ``unknown``.
    """

    def __init__(self, message, budget=None):
        super().__init__(message)
        self.budget = budget
