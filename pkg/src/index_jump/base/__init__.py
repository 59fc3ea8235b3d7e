"""Import abstract classes and value objects to be accessible at 'base' sub-package."""

# Configuration dataclasses
from .data_class import NumericConfig, SearchConfig

# Angles, normal form blocks and orbit records
from .angle import Angle, UnitPoint
from .normal_form import ZERO_SPLIT, NormalForm, SplittingPair
from .decomposition import NormalFormDecomposition
from .orbit_record import OrbitRecord
from .ellipsoid_spec import EllipsoidSpec, SquaredRadius

# Pydantic objects recording tuples, ledgers and certificates
from .jump_tuple import JumpTuple, TupleCheck, TupleVerification
from .morse_ledger import MorseLedger
from .certificate_report import (
    BoundClaim,
    CertificateReport,
    HypothesisCheck,
    HypothesisReport,
    ParityCounts,
    StageResult,
)

# Abstract certificate pipeline
from .certifier import Certifier

# Public interface
__all__ = [
    "NumericConfig",
    "SearchConfig",
    "Angle",
    "UnitPoint",
    "ZERO_SPLIT",
    "NormalForm",
    "SplittingPair",
    "NormalFormDecomposition",
    "OrbitRecord",
    "EllipsoidSpec",
    "SquaredRadius",
    "JumpTuple",
    "TupleCheck",
    "TupleVerification",
    "MorseLedger",
    "BoundClaim",
    "CertificateReport",
    "HypothesisCheck",
    "HypothesisReport",
    "ParityCounts",
    "StageResult",
    "Certifier",
]
