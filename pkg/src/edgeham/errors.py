"""Exception types shared across the toolkit.

All errors derive from EdgeHamError so callers can catch the whole family.
Parse errors carry the offending line number when one is known.
"""

from __future__ import annotations


class EdgeHamError(Exception):
    """Base class for all toolkit errors."""


# -- construction -----------------------------------------------------------

class SelfLoopError(EdgeHamError):
    pass


class DuplicateEdgeError(EdgeHamError):
    pass


class VertexOutOfRangeError(EdgeHamError):
    pass


# -- certificates and assignments -------------------------------------------

class NotAPermutationError(EdgeHamError):
    pass


class NotAHittingSetError(EdgeHamError):
    pass


class NotAVertexCoverError(EdgeHamError):
    pass


class InvalidPathError(EdgeHamError):
    """An edge sequence claimed to be a valid edge path is not."""


class InvalidCertificateError(EdgeHamError):
    """A kernel or merged-instance certificate failed validation."""


class InvalidSolutionError(EdgeHamError):
    """A dominating Eulerian subgraph handed to a transfer is invalid."""


class NoLargeGroupError(EdgeHamError):
    """No insertion point for a re-added edge; signals a broken precondition."""


class EdgeTypeMismatchError(EdgeHamError):
    """An edge is not incident to the hitting-set vertex of its declared type."""


class NotAProperColoringError(EdgeHamError):
    pass


# -- solver resource limits --------------------------------------------------

class InstanceTooLargeError(EdgeHamError):
    pass


class MergedInstanceTooLargeError(InstanceTooLargeError):
    pass


class TooFewEdgesError(EdgeHamError):
    pass


class SearchBudgetExceededError(EdgeHamError):
    pass


# -- transforms and rewrites --------------------------------------------------

class SameVertexError(EdgeHamError):
    pass


class SetsTooSmallError(EdgeHamError):
    pass


class NotABicliqueError(EdgeHamError):
    pass


class PreconditionError(EdgeHamError):
    pass


class AugmentationStuckError(EdgeHamError):
    """The connectivity augmentation found no improving flip; implementation bug."""


# -- decompositions and expressions -------------------------------------------

class InvalidDecompositionError(EdgeHamError):
    pass


class LabelOutOfBudgetError(EdgeHamError):
    pass


class JoinSameLabelError(EdgeHamError):
    pass


class GenerationFailedError(EdgeHamError):
    pass


class InfeasibleSpecError(EdgeHamError):
    pass


# -- file formats --------------------------------------------------------------

class ParseError(EdgeHamError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CountMismatchError(ParseError):
    pass
