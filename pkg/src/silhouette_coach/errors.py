"""Exception types shared across the package."""


class CoachError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(CoachError):
    """Two images/masks that must share a shape do not."""


class OutOfBounds(CoachError):
    """A rectangle exceeds the bounds of the image it indexes."""


class EmptyUnion(CoachError):
    """Similarity of two all-background masks is 0/0 and undefined."""


class EmptyMask(CoachError):
    """A template mask has no foreground pixels."""


class EmptyTemplateSet(CoachError):
    """An operation requires at least one template."""


class UnknownRoutine(CoachError):
    """Routine name not present in the store."""


class UnknownTemplate(CoachError):
    """Template id not present in the store."""


class WrongPhase(CoachError):
    """Session operation invoked in a phase that does not allow it."""


class EmptyDataset(CoachError):
    """Evaluation requires at least one attempt."""


class EmptyCurve(CoachError):
    """Threshold selection requires at least one ROC point."""


class UndefinedMetric(CoachError):
    """A ratio metric's denominator is zero."""


class MissingManifest(CoachError):
    """Store root lacks a manifest, or the manifest names a missing file."""


class DuplicateSequence(CoachError):
    """Two templates claim the same (routine, sequence) slot."""
