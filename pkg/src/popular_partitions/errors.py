"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    pass


class PreconditionError(ValueError):
    """An input violates a construction's stated preconditions (e.g. m < 2)."""


class BudgetExceeded(RuntimeError):
    """Exhaustive work was requested beyond the configured size limit."""


class SchemaError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
