"""Transition amplitudes, overlaps and expectation values on hybrid tree tensor
networks, simulated on dense statevectors."""

from .errors import (
    CapacityError,
    ConfigError,
    ContractViolation,
    DegenerateNormalizationError,
    HTNError,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ConfigError",
    "ContractViolation",
    "DegenerateNormalizationError",
    "HTNError",
]
