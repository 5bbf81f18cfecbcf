"""Exception hierarchy."""


class FrobkitError(Exception):
    """Base class for all errors raised by frobkit."""


class AmbientMismatchError(FrobkitError, ValueError):
    """Operands live in different polynomial rings."""


class ExponentOverflowError(FrobkitError, OverflowError):
    """An exponent would exceed the ring's configured bound."""


class ResourceLimitError(FrobkitError):
    """A Groebner computation hit its S-pair or degree cap.

    Raised instead of returning a possibly wrong answer.
    """


class UnstabilizedError(FrobkitError):
    """A chain or union did not stabilize within the allowed number of levels.

    This is an inconclusive outcome, not a negative one.
    """


class ParseError(FrobkitError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
