"""Exception hierarchy for betasieve.

The CLI maps these onto exit codes: anything derived from
:class:`ValidationError` is a problem with the user's input (exit code 2),
everything else is an internal failure (exit code 1).
"""

from __future__ import annotations

__all__ = [
    "BetaSieveError",
    "ValidationError",
    "TooFewObservationsError",
    "DuplicatePosteriorError",
    "InputFormatError",
    "NumericsError",
]


class BetaSieveError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(BetaSieveError):
    """Input data violates a documented constraint."""


class TooFewObservationsError(ValidationError):
    """A set needs at least four observations to be screened."""


class DuplicatePosteriorError(ValidationError):
    """Two observations reduce to the same posterior parameters."""


class InputFormatError(ValidationError):
    """A file could not be parsed as the expected table or spec format."""


class NumericsError(BetaSieveError):
    """A numerical routine failed to converge to its accuracy target."""
