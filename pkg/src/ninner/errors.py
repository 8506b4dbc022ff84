"""Exception hierarchy shared by every module."""


class NInnerError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(NInnerError, ValueError):
    def __init__(self, expected, got, what="vector"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} has length {got}, expected {expected}")


class ParseError(NInnerError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(NInnerError, ValueError):
    pass


class NegativeNormError(NInnerError, ValueError):
    """Squared norm came out negative beyond the clamping tolerance."""


class SingularSystemError(NInnerError, ArithmeticError):
    """A linear system has no unique solution.

    ``witness`` carries the vanishing quantity that proves it.
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class CollinearError(SingularSystemError):
    pass


class InternalConsistencyError(NInnerError, AssertionError):
    """An identity that must hold exactly did not. Always a bug."""
