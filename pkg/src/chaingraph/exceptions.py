"""Exception hierarchy.

Every error raised for a well-formed request that makes no sense for the
given graph or distribution derives from :class:`ChainGraphError`.
"""


class ChainGraphError(Exception):
    """Base class for domain errors."""


class InvalidGraph(ChainGraphError, ValueError):
    """Malformed node names, dangling endpoints or duplicate pairs."""


class NotAChainGraph(ChainGraphError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("semi-directed cycle " + " ".join(self.cycle))


class EmptyNodeSet(ChainGraphError, ValueError):
    pass


class NotAComponent(ChainGraphError, ValueError):
    pass


class NotDecomposable(ChainGraphError):
    pass


class NotAClique(ChainGraphError, ValueError):
    pass


class NodeSetMismatch(ChainGraphError, ValueError):
    pass


class NotBnEquivalent(ChainGraphError):
    """Some closure graph is not decomposable."""


class BadStartClique(ChainGraphError, ValueError):
    pass


class InvalidTriplet(ChainGraphError, ValueError):
    pass


class InvalidQuery(ChainGraphError, ValueError):
    pass


class ExpertModelError(ChainGraphError, ValueError):
    """Base for inconsistent expert block sequences."""


class OverlappingCompetence(ExpertModelError):
    pass


class InfluenceNotEarlier(ExpertModelError):
    pass


class InfluenceNotComplete(ExpertModelError):
    pass


class CompetenceDisconnected(ExpertModelError):
    pass


class ScopeMismatch(ChainGraphError, ValueError):
    pass


class ZeroNormalizer(ChainGraphError, ArithmeticError):
    pass


class DivisionByZeroWithNonzeroNumerator(ChainGraphError, ArithmeticError):
    pass


class InvalidDistribution(ChainGraphError, ValueError):
    pass


class ParseError(ChainGraphError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ConflictingEdge(ParseError):
    pass
