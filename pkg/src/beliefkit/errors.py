"""Exception hierarchy for beliefkit.

Every validation failure raises a distinct class whose message names the
violated condition, so callers can branch on the class and humans can read
the message.
"""

from __future__ import annotations

__all__ = [
    "BeliefkitError",
    "FrameDefinitionError",
    "UnknownElementError",
    "FrameMismatchError",
    "MassValidationError",
    "NotABeliefFunctionError",
    "TotalConflictError",
    "TableTooLargeError",
    "RecordInvariantError",
    "PopulationError",
    "EmptyPopulationError",
    "LabelingSpecError",
    "FormatError",
]


class BeliefkitError(Exception):
    """Base class for all beliefkit errors."""


class FrameDefinitionError(BeliefkitError, ValueError):
    """Invalid frame construction (empty, duplicate names, over the size cap...)."""


class UnknownElementError(BeliefkitError, ValueError):
    """A name does not belong to the frame."""


class FrameMismatchError(BeliefkitError, ValueError):
    """Two values built over different frames were combined."""


class MassValidationError(BeliefkitError, ValueError):
    """A mass function violates one of its defining conditions."""


class NotABeliefFunctionError(MassValidationError):
    """A table fails inversion back to a valid mass function."""


class TotalConflictError(BeliefkitError, ArithmeticError):
    """Dempster combination is undefined: all joint mass falls on the empty set."""


class TableTooLargeError(BeliefkitError, ValueError):
    """The frame exceeds the size gate for a dense table computation."""


class RecordInvariantError(BeliefkitError, ValueError):
    """A population record violates the response/label invariants."""


class PopulationError(BeliefkitError, ValueError):
    """A population violates its structural invariants (mixed frames, duplicate ids)."""


class EmptyPopulationError(BeliefkitError, ValueError):
    """An estimator was asked to run on an empty population."""


class LabelingSpecError(BeliefkitError, ValueError):
    """A labeling-process specification violates its defining conditions."""


class FormatError(BeliefkitError, ValueError):
    """A file could not be parsed or failed re-validation on load."""
