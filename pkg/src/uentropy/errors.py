"""Exception types shared across the package."""


class UEntropyError(Exception):
    """Base class for all package errors."""


class ValidationError(UEntropyError, ValueError):
    """Input violates a documented invariant (bad matrix, inadmissible word, ...)."""


class DomainError(UEntropyError, ValueError):
    """A point or argument lies outside the domain of an operation."""


class UnsupportedConfiguration(UEntropyError):
    """The requested configuration is outside what the package implements."""


class InfeasibleCover(UEntropyError):
    """No Bowen-ball cover exists within the depth budget."""


class NotIrreducible(UEntropyError):
    """A transition matrix is reducible where irreducibility is required."""


class LevelUnreachable(UEntropyError):
    """A Birkhoff level lies outside the achievable interval."""


class NotMixing(UEntropyError):
    """A subshift is not topologically mixing where mixing is required."""
