"""Exception hierarchy.

Two families: :class:`ValidationError` for inputs that break an invariant
(the CLI exits with status 2) and :class:`ComputationError` for valid inputs
on which a quantity is undefined or too expensive (exit status 3).
"""


class RiskError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(RiskError, ValueError):
    """An input violates a documented invariant."""


class ParseError(ValidationError):
    """A specification document could not be read."""

    def __init__(self, message, *, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class MassError(ValidationError):
    pass


class NegativeScale(ValidationError):
    pass


class SpecError(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class DiscretionMissing(ValidationError):
    pass


class AccordMismatch(ValidationError):
    pass


class ComputationError(RiskError, ArithmeticError):
    """A quantity is undefined or cannot be produced for valid inputs."""


class EmptyTail(ComputationError):
    pass


class DegenerateSupport(ComputationError):
    pass


class SizeError(ComputationError):
    pass


class CapacityError(ComputationError):
    pass
