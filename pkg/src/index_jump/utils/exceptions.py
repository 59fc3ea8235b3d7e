"""Exceptions raised by the 'index_jump' package.

Each class also derives from the builtin it refines, so that callers
catching 'ValueError' (as pydantic and most of the code base do) keep working.
"""

from typing import Any


class IndexJumpError(Exception):
    """Root of all package specific errors."""


class DomainError(IndexJumpError, ValueError):
    """Argument outside the domain of an operation e.g. m <= 0."""


class DimensionError(IndexJumpError, ValueError):
    """Matrix or decomposition dimensions are inconsistent."""


class PrecisionError(IndexJumpError, ArithmeticError):
    """Working precision cannot certify an integer valued result."""


class HypothesisError(IndexJumpError, ValueError):
    """Input violates a standing hypothesis e.g. non-positive mean index."""


class ConsistencyError(IndexJumpError, RuntimeError):
    """Two independent computations of the same quantity disagree."""


class SchemaError(IndexJumpError, ValueError):
    """System file violates the schema at 'location'."""

    def __init__(self, location: str, message: str) -> None:
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class SearchExhausted(IndexJumpError):
    """No jump tuple found below 'n_max'.

    Attributes:
        near_miss (dict[str, Any]):
            Candidate N with the smallest maximal fractional defect.
    """

    def __init__(self, message: str, near_miss: dict[str, Any] | None = None) -> None:
        self.near_miss = near_miss or {}
        super().__init__(message)


class OracleInconclusive(IndexJumpError):
    """Splitting oracle cannot separate eigenvalues reliably."""


# Public interface
__all__ = [
    "IndexJumpError",
    "DomainError",
    "DimensionError",
    "PrecisionError",
    "HypothesisError",
    "ConsistencyError",
    "SchemaError",
    "SearchExhausted",
    "OracleInconclusive",
]
