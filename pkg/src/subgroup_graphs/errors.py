class InvalidArgument(ValueError):
    """Raised when an operation's input violates its documented precondition."""


class PreconditionViolation(InvalidArgument):
    """A mathematical hypothesis of a check does not hold for the given input."""


class WordParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class InvalidOracle(ValueError):
    """A caller-supplied comparator returned something other than -1, 0 or 1."""
