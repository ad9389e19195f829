"""Exception hierarchy shared by every subpackage."""


class InfMeansError(Exception):
    """Base class for all library errors."""


class InvalidAtom(InfMeansError, ValueError):
    pass


class ApproximationDepthExceeded(InfMeansError):
    """A Cantor cut point did not land on a gap within the depth limit."""


class CantorOverlapError(ApproximationDepthExceeded):
    """Two Cantor pieces overlap in a way that cannot be resolved exactly."""


class NonPLBreakOnCantor(ApproximationDepthExceeded):
    pass


class RepresentationLimit(InfMeansError):
    """The result is representable in principle but would be too large."""


class EmptySet(InfMeansError, ValueError):
    pass


class NotAnSSet(InfMeansError):
    """The top-dimension part is countably infinite, so no Hausdorff average exists."""


class OutOfDomain(InfMeansError):
    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or reason)


class UnknownMean(InfMeansError, KeyError):
    pass


class NoSignChange(InfMeansError):
    pass


class DSLSyntaxError(InfMeansError, SyntaxError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")
