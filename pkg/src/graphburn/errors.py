"""Exception hierarchy shared by all modules."""


class BurningError(Exception):
    """Base class for every error raised by graphburn."""


class GraphError(BurningError, ValueError):
    pass


class EndpointOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class NotATree(GraphError):
    pass


class Disconnected(GraphError):
    pass


class GraphFormatError(GraphError):
    pass


class CoveringInvalid(BurningError, ValueError):
    pass


class BudgetExceeded(BurningError):
    """Raised by the exact solver when its node or time budget runs out.

    ``lower_bound`` is the smallest horizon not yet refuted and
    ``upper_bound`` the best horizon known to work (or ``None``).
    """

    def __init__(self, message, lower_bound, upper_bound=None, nodes=0):
        super().__init__(message)
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.nodes = nodes


class StrategyError(BurningError):
    pass


class NotAPath(StrategyError, ValueError):
    pass


class NotACaterpillar(StrategyError, ValueError):
    pass


class NotA2Caterpillar(StrategyError, ValueError):
    pass


class Unsupported(StrategyError):
    """A strategy cannot handle the instance within its proven bound."""


class StrategyInternalError(StrategyError, AssertionError):
    """A strategy produced circles that fail its own audit."""


class InvalidInstance(BurningError, ValueError):
    pass


class NotDistinct(InvalidInstance):
    pass


class BadCardinality(InvalidInstance):
    pass


class SumMismatch(InvalidInstance):
    pass


class RangeViolation(InvalidInstance):
    pass


class PartitionInvalid(BurningError, ValueError):
    pass


class NotOptimalSchedule(BurningError, ValueError):
    pass


class StructureViolation(BurningError, ValueError):
    pass


class InfeasibleSpec(BurningError, ValueError):
    pass


class GenerationFailed(BurningError):
    pass
