"""Exception hierarchy shared by every layer of the package."""


class HTNError(Exception):
    """Base class for all errors raised by hybridtn."""


class ContractViolation(HTNError, ValueError):
    """An input breaks an operation's precondition (shape, unitarity, hermiticity)."""


class CapacityError(HTNError):
    """A register or matrix would exceed the configured size cap."""


class DegenerateNormalizationError(HTNError):
    """A shot-mode estimate of A^2 came out non-positive."""


class ConfigError(HTNError):
    """An instance or estimation config could not be parsed or validated."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
