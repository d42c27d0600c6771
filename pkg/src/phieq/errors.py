"""Exceptions shared across the package."""


class EffortExhausted(Exception):
    """Factoring gave up before the integer was fully split.

    The caller is expected to record the affected instance as unresolved.
    """

    def __init__(self, cofactor: int, partial: dict[int, int] | None = None):
        self.cofactor = cofactor
        self.partial = dict(partial or {})
        super().__init__(f"factoring budget exhausted; unfactored cofactor {cofactor}")


class ParityViolation(ValueError):
    """An exponent's parity contradicts the quotient or equation shape."""


class DividesBase(ValueError):
    """The prime divides x1*y1, so its rank of apparition is undefined."""


class DomainError(ValueError):
    """An analytic bound was evaluated outside the range it is stated for."""
