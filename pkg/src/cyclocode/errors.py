"""Exception types shared across the package.

The CLI maps these onto exit codes: domain/usage problems exit 2,
verification failures exit 1, capacity overruns exit 3.
"""


class DimensionMismatch(ValueError):
    """Two words disagree on length or alphabet size."""


class DivisionDomainError(ValueError):
    """A bound's denominator degenerates (e.g. a radius-0 ball leaves Vol - 1 = 0)."""


class CapacityError(RuntimeError):
    """The requested computation exceeds the configured enumeration budget.

    Raised loudly instead of silently sampling; the message states the
    budget and the size that tripped it.
    """

    def __init__(self, message: str, required: int | None = None, budget: int | None = None):
        if required is not None and budget is not None:
            message = f"{message} (required {required}, budget {budget})"
        super().__init__(message)
        self.required = required
        self.budget = budget


class ContractViolation(ValueError):
    """An input breaks a documented precondition (e.g. a non-independent vertex set)."""


class CodeFileFormatError(ValueError):
    """A code file does not follow the on-disk format; carries the offending line number."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
