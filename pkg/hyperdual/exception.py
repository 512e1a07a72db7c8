"""Exceptions and warnings raised by the hyperdual package."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from hyperdual.expr import ParseDiagnostic

__all__ = [
    "HyperDualError",
    "DomainError",
    "ArityMismatchError",
    "ParseError",
    "NotApplicableError",
    "ImpureFunctionError",
    "DomainWarning",
]


class HyperDualError(Exception):
    """Base class of all hyperdual errors."""


class DomainError(HyperDualError, ValueError):
    """When a primitive is evaluated outside of its (open) domain."""


class ArityMismatchError(HyperDualError, ValueError):
    """When the number of coordinates does not match the arity of a function."""


class NotApplicableError(HyperDualError, ValueError):
    """When a derivative method cannot be applied to the function or point."""


class ImpureFunctionError(HyperDualError, RuntimeError):
    """When repeated calls of a function disagree on the primal value."""


class ParseError(HyperDualError, ValueError):
    """When an expression cannot be parsed.

    The position and the offending token are available in the diagnostic.
    """

    def __init__(self, diagnostic: ParseDiagnostic):
        """Wrap a parse diagnostic."""
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


class DomainWarning(UserWarning):
    """When non-strict mode lets IEEE special values propagate out of a primitive."""
