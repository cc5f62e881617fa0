"""Exception types shared across the package."""


class SrskitError(Exception):
    """Base class for all srskit errors."""


class ParseError(SrskitError):
    """Malformed input text. Carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotTerminatingError(SrskitError):
    """Termination could not be certified and no step budget was given."""


class NotConvergentError(SrskitError):
    """The operation requires a system certified convergent."""


class BudgetExhaustedError(SrskitError):
    """A step or node budget ran out before the operation finished."""


class GpcpError(SrskitError):
    """Invalid correspondence-problem instance, solution, or witness."""
