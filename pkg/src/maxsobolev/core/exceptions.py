"""Exceptions and warnings shared by the maxsobolev modules."""
from __future__ import annotations

__all__ = [
    "BudgetError",
    "CatalogError",
    "ConfigError",
    "DegenerateBallWarning",
    "DivergentEstimateError",
    "DomainError",
    "EndpointSupremumWarning",
    "LipschitzDataError",
    "ResolutionError",
    "VerificationError",
]


class DomainError(ValueError):
    """A point, ball or field does not fit the domain it is used with."""


class ResolutionError(ValueError):
    """The grid is too coarse for the requested operation."""


class CatalogError(ValueError):
    """A catalog id, parameter list or custom expression is invalid."""


class ConfigError(ValueError):
    """A scenario configuration is invalid.

    Parameters
    ----------
    field : str
        Dotted name of the offending configuration field.
    message : str
        Explanation of the problem.
    """

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field


class LipschitzDataError(ValueError):
    """Data handed to a Lipschitz extension violates the Lipschitz bound."""

    def __init__(self, i: int, j: int, ratio: float, lipschitz: float) -> None:
        super().__init__(
            f"Points {i} and {j} have difference quotient {ratio!r}, which exceeds "
            f"the Lipschitz constant {lipschitz!r}.")
        self.pair = (i, j)


class DivergentEstimateError(ArithmeticError):
    """A Muckenhoupt estimate that is required to be finite diverged."""


class VerificationError(AssertionError):
    """A precondition that must be verified numerically does not hold."""


class BudgetError(MemoryError):
    """A grid or benchmark exceeds its configured cell budget."""


class DegenerateBallWarning(UserWarning):
    """A ball average was requested for a ball that contains no cell center."""


class EndpointSupremumWarning(UserWarning):
    """A supremum over ε is still increasing at an end of the ε interval."""
