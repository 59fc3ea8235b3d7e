"""Index theory constants and enumerations.

This module contains StrEnum classes and Literal type constants
used throughout the 'index_jump' package.
"""

import sys
from fractions import Fraction
from typing import Literal, TypeAlias

from mpmath import mpf

if sys.version_info >= (3, 11):
    # pylint: disable=wrong-import-position
    from enum import StrEnum
else:
    from enum import Enum

    # Fallback for Python < 3.11
    class StrEnum(str, Enum):
        """String enumeration for Python < 3.11 compatibility."""

        def __str__(self) -> str:
            return str(self.value)


# Static variables
SCHEMA_VERSION = "mik/1"
AngleKind = Literal["rational_pi", "irrational"]
OutputFormat = Literal["json", "tsv"]
Identity = Literal["structure", "offsets", "nullity", "plus", "minus"]

# Exit codes shared by 'jump' and 'certify' subcommands
EXIT_CODES = {"CERTIFIED": 0, "NON-REALIZABLE": 1, "INCONCLUSIVE": 2}


# Dynamic variables
class BlockType(StrEnum):
    N1 = "N1"
    D = "D"
    R = "R"
    N2 = "N2"


class Grading(StrEnum):
    MASLOV = "maslov"
    VITERBO = "viterbo"


class ParityCase(StrEnum):
    EVEN = "n-even"
    ODD = "n-odd"

    @classmethod
    def of(cls, n: int) -> "ParityCase":
        return cls.EVEN if n % 2 == 0 else cls.ODD


class CertMethod(StrEnum):
    EVEN = "EvenCertifier"
    ODD = "OddCertifier"


class Verdict(StrEnum):
    CERTIFIED = "CERTIFIED"
    NON_REALIZABLE = "NON-REALIZABLE"
    INCONCLUSIVE = "INCONCLUSIVE"


class OrbitClass(StrEnum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    MIXED = "nonhyperbolic-mixed"


class SplitSource(StrEnum):
    TABLE = "table"
    ORACLE = "oracle"


# Type aliases for index computations
Real: TypeAlias = Fraction | mpf
IndexRow: TypeAlias = dict[str, str | int]

# Public interface
__all__ = [
    "SCHEMA_VERSION",
    "AngleKind",
    "OutputFormat",
    "Identity",
    "EXIT_CODES",
    "StrEnum",
    "BlockType",
    "Grading",
    "ParityCase",
    "CertMethod",
    "Verdict",
    "OrbitClass",
    "SplitSource",
    "Real",
    "IndexRow",
]
