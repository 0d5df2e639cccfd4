"""Exception types shared across the package."""


class WildmatchError(Exception):
    """Base class for all package errors."""


class EmptyPattern(WildmatchError):
    """A pattern file or argument contained no characters."""


class LengthMismatch(WildmatchError):
    """Two strings that must have equal length do not."""


class IpmWindowTooLarge(WildmatchError):
    """An internal-matching haystack is at least twice the needle length."""


class SparsifierPreconditionViolated(WildmatchError):
    """The pattern has too many wildcards to contain a sparse solid fragment."""


class PositionOutOfRange(WildmatchError):
    """A candidate position lies outside the valid start range."""


class ChunkTooLong(WildmatchError):
    """A chunk matcher received a text longer than 3m/2."""


class PeriodicPreconditionViolated(WildmatchError):
    """The almost-periodic machinery was called outside its contract."""


class ContextMismatch(WildmatchError):
    """Occurrence sets with different pattern length or threshold were merged."""


class InvalidLowerBoundParams(WildmatchError):
    """Invalid generator parameters (odd k, or no ones/wildcards requested)."""


class CertificationFailed(WildmatchError):
    """A generated instance failed one of its certified properties."""


class DecompositionUnavailable(WildmatchError):
    """Internal: the structural decomposition could not make progress."""
