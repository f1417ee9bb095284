"""Exception hierarchy shared by every module in the package."""


class AutomatonError(Exception):
    """Base class for all errors raised by symdca."""


class InvalidArgument(AutomatonError, ValueError):
    pass


class EmptyInputError(AutomatonError, ValueError):
    """Raised when an operation whose domain is nonempty words gets the empty word."""


class NotAccessibleError(AutomatonError):
    def __init__(self, state, message=None):
        self.state = state
        super().__init__(message or f"state {state!r} is not accessible from the initial state")


class NotSymmetricError(AutomatonError):
    """Raised by the symmetric synthesis when the input machine is order sensitive.

    The ``counterexample`` attribute holds the pair of permuted words that
    produce different outputs.
    """

    def __init__(self, counterexample):
        self.counterexample = counterexample
        super().__init__(f"automaton is not symmetric: {counterexample}")


class ResourceLimitError(AutomatonError):
    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)


class InternalInconsistencyError(AutomatonError, AssertionError):
    """A self-check failed. Indicates a bug, never bad user input."""
