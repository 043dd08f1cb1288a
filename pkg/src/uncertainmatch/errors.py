"""Shared exception types."""


class DomainError(ValueError):
    """An argument violates an operation's precondition."""


class CapacityError(RuntimeError):
    """An enumeration guard was exceeded (see capacity.py)."""


class ParseError(ValueError):
    """A malformed instance file; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
