"""Exception types shared across the package.

Each maps to one CLI exit code family: invalid input (2), guard
exceeded (3), infeasible (4).
"""
from __future__ import annotations


class BmcolorError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(BmcolorError):
    """A numeric or mode parameter violates an operation precondition."""


class InvalidStructureError(BmcolorError):
    """The graph lacks required structure (bipartite, tree, chains, ...)."""


class GuardExceededError(BmcolorError):
    """An exact search was refused because the instance exceeds its size guard."""


class InvalidCertificateError(BmcolorError):
    """A yes-certificate violates lists, bounds, or properness."""


class InfeasibleError(BmcolorError):
    """No solution exists for the requested parameters."""


class ParseError(BmcolorError):
    """A file could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
