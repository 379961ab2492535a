"""Exception types raised by moralcheck.

Every error is a ``ValueError`` so callers that only care about bad input
can catch one thing.
"""


class MoralityError(ValueError):
    pass


class IndexOutOfRange(MoralityError):
    pass


class SelfLoop(MoralityError):
    pass


class ExcessNotInNeighbourhood(MoralityError):
    pass


class CyclicInput(MoralityError):
    pass


class AsymmetricFamily(MoralityError):
    pass


class MalformedKit(MoralityError):
    pass


class InvalidKit(MoralityError):
    """A kit that is well formed but is not a perfect elimination kit."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class DegreeTooHigh(MoralityError):
    pass


class NotDegreeTwoSimplicial(MoralityError):
    pass


class BudgetRequired(MoralityError):
    pass


class MalformedDimacs(MoralityError):
    pass


class NotThreeCnf(MoralityError):
    pass


class DegreeOverflow(MoralityError):
    pass


class ParseError(MoralityError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
