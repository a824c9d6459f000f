"""Exception hierarchy shared by all modules."""


class CycleCoverError(Exception):
    """Base class for every error raised by this package."""


class InvalidEdge(CycleCoverError):
    pass


class InvalidSplit(CycleCoverError):
    pass


class InvalidExpansion(CycleCoverError):
    pass


class NotACycle(CycleCoverError):
    pass


class InvalidParameter(CycleCoverError, ValueError):
    pass


class LemmaViolation(CycleCoverError):
    """A search that a structural lemma guarantees to succeed came up empty.

    Seeing this means either the input broke a precondition or there is a bug.
    """


class NoFlow(CycleCoverError):
    pass


class InvalidConstraint(CycleCoverError):
    pass


class RoutingDeadEnd(CycleCoverError):
    pass


class AmbiguousPattern(CycleCoverError):
    pass


class InvalidComparison(CycleCoverError):
    pass


class Infeasible(CycleCoverError):
    pass


class ParityViolation(CycleCoverError):
    pass


class NotBridgeless(CycleCoverError):
    pass


class InvalidInput(CycleCoverError):
    pass


class TooLarge(CycleCoverError):
    pass


class GraphFormatError(CycleCoverError):
    pass
