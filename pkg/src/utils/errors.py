"""
Error Types for Irrational Base Nets
"""


class IrrnetError(Exception):
    """Base class for every error raised by the package."""


class DomainError(IrrnetError, ValueError):
    """An argument lies outside the domain of the operation."""


class RangeError(IrrnetError, IndexError):
    """An index points past the last element of an enumeration."""


class NotRepresentableError(IrrnetError, ValueError):
    """An integer has no admissible digit word in the requested base."""


class UnsupportedBaseError(IrrnetError, ValueError):
    """The operation is only developed for a narrower family of bases."""


class DimensionError(IrrnetError, ValueError):
    """Point, interval or level vector dimensions disagree."""


class PartitionTooFineError(IrrnetError, ValueError):
    """A partition asks for a required count G_j with j < -2."""


class PreconditionError(IrrnetError, ValueError):
    """A construction was handed a point set that breaks its hypotheses."""

    def __init__(self, message, partition=None):
        super().__init__(message)
        self.partition = partition


class ConstructionError(IrrnetError, RuntimeError):
    """A generated point set failed its own runtime postcondition."""


class CountIdentityError(IrrnetError, RuntimeError):
    """Required counts over a partition do not add up to the set size."""


class InputFormatError(IrrnetError, ValueError):
    """A point file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
