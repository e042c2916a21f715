"""Exception types raised across the package."""


class HassemineError(ValueError):
    """Base class for all domain errors."""


class CyclicInput(HassemineError):
    """A directed cycle where an acyclic graph is required."""


class UnknownLabel(HassemineError):
    """A label that is not present in the relevant label table."""


class TooManyLabels(HassemineError):
    """Label count outside the supported enumeration range."""


class LabelMismatch(HassemineError):
    """Two graphs that were expected to share a label table do not."""


class EmptyRestriction(HassemineError):
    """Sequence restriction to an empty label set."""


class NotSimple(HassemineError):
    """A sequence with repeated labels where simplicity is required."""


class EmptyTerm(HassemineError):
    """A subset sequence containing an empty term."""


class NotLayered(HassemineError):
    """A graph that does not admit the layered partition gts needs."""


class LabelNotInUniverse(HassemineError):
    """A label outside the sequence's universe."""


class EmptyJ(HassemineError):
    """An empty analysis label set."""


class EmptyInput(HassemineError):
    """An empty collection where at least one element is required."""


class InvalidThreshold(HassemineError):
    """A clustering parameter out of range: coverage threshold outside
    [0, 100], or a non-positive candidate size cap."""


class InvalidMode(HassemineError):
    """An unknown clustering mode name (expected 'minimal' or 'literal')."""


class MissingClass(HassemineError):
    """Relevance scoring input lacking a win or a lose episode."""


class InvalidPolicy(HassemineError):
    """An unknown or version-incompatible simulation policy."""


class DimensionMismatch(HassemineError):
    """Matrices whose dimensions were expected to agree."""
