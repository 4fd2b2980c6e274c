class BlochLabError(Exception):
    """Base class for library errors."""


class DomainError(BlochLabError, ValueError):
    """An argument lies outside the domain of an operation (e.g. ``|z| >= 1``)."""


class ConvergenceError(BlochLabError, RuntimeError):
    """An adaptive procedure hit its budget; carries the last two iterates."""

    def __init__(self, message: str, last: float, previous: float):
        super().__init__(f"{message} (last={last!r}, previous={previous!r})")
        self.last = last
        self.previous = previous


class ScheduleError(BlochLabError, RuntimeError):
    """Radius selection could not satisfy a condition within the gap budget."""

    def __init__(self, message: str, n: int, condition: str):
        super().__init__(message)
        self.n = n
        self.condition = condition


class ParseError(BlochLabError, ValueError):
    """Malformed expression text or input file."""
