"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An argument violates an operation's precondition (bad dimension, sign, grid)."""


class SingularUpdateError(RuntimeError):
    """Kalman update with zero innovation variance but nonzero innovation.

    Carries ``step`` and ``t`` once the solver loop knows them.
    """

    def __init__(self, message: str, step: int | None = None, t: float | None = None):
        super().__init__(message)
        self.step = step
        self.t = t


class DivergedSolveError(RuntimeError):
    """The vector field returned a non-finite value; the solve cannot continue."""

    def __init__(self, message: str, t: float):
        super().__init__(message)
        self.t = t


class CsvFormatError(ValueError):
    """A trajectory CSV file does not parse; ``line`` is the offending 1-based line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
