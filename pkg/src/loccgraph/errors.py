"""Exception types shared across the package."""


class LoccError(Exception):
    """Base class for every error raised by this package."""


class ParseError(LoccError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyStructure(LoccError):
    pass


class MismatchedAgents(LoccError):
    pass


class SearchBoundExceeded(LoccError):
    pass


class InputConnected(LoccError):
    pass


class TooFewEdges(LoccError):
    pass


class NotSpanningTree(LoccError):
    pass


class EqualTrees(LoccError):
    pass


class ConditionNotMet(LoccError):
    pass


class NotRUniformHypertrees(LoccError):
    pass


class EqualHypertrees(LoccError):
    pass


class RTooSmall(LoccError):
    pass


class IllegalMove(LoccError):
    pass


class BadAgents(LoccError):
    pass


class BudgetExceeded(LoccError):
    pass


class BoundExceeded(LoccError):
    pass


class InvalidSequence(LoccError):
    pass


class IncompatibleParameters(LoccError):
    pass
