"""Exception hierarchy.

Input and validation problems derive from :class:`RibbonError` (a
``ValueError``); conditions that can only arise from a bug in this package
derive from :class:`InternalError`.
"""


class RibbonError(ValueError):
    """Base class for invalid input."""


class GraphFormatError(RibbonError):
    """A graph description could not be parsed.

    ``where`` names the offending line or field when known.
    """

    def __init__(self, message, where=None):
        self.where = where
        if where is not None:
            message = f"{where}: {message}"
        super().__init__(message)


class LoopEdge(RibbonError):
    pass


class Disconnected(RibbonError):
    pass


class RotationMismatch(RibbonError):
    pass


class DuplicateId(RibbonError):
    pass


class UnknownVertex(RibbonError, KeyError):
    pass


class UnknownDart(RibbonError, KeyError):
    pass


class NotPlanar(RibbonError):
    pass


class HasBridge(RibbonError):
    pass


class NotASpanningTree(RibbonError):
    pass


class NonzeroDegree(RibbonError):
    pass


class DegreeMismatch(RibbonError):
    pass


class TailMismatch(RibbonError):
    pass


class FiringBase(RibbonError):
    pass


class NoChip(RibbonError):
    pass


class TooLarge(RibbonError):
    """An enumeration would exceed its budget."""


class InternalError(RuntimeError):
    """Something that valid input can never trigger."""


class InternalParity(InternalError):
    pass


class NonTermination(InternalError):
    pass
