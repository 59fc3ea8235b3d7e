"""High level direct import from 'index_jump' package:

- NormalForm -> Abstract class for basic normal form blocks.
- Certifier -> Abstract class re-running the multiplicity counting argument.
- OrbitRecord -> Prime closed characteristic (i1 and monodromy decomposition).
- NormalFormDecomposition -> Diamond sum of basic normal form blocks.
- EllipsoidSpec -> Squared radii of a weakly non-resonant ellipsoid.
- NumericConfig, SearchConfig -> Precision and jump tuple search settings.
- index_at, mean_index, scan_tuples, certify -> Main computations.
- ellipsoid_system, parse_system, emit_report -> Known-answer systems and I/O.
"""

from .base import (
    Certifier,
    EllipsoidSpec,
    NormalForm,
    NormalFormDecomposition,
    NumericConfig,
    OrbitRecord,
    SearchConfig,
)
from .certificate import certify
from .ellipsoid import ellipsoid_system, path_index_oracle
from .iteration import index_at, mean_index
from .jump import scan_tuples
from .system_io import emit_report, parse_system

# Public interface
__all__ = [
    "Certifier",
    "EllipsoidSpec",
    "NormalForm",
    "NormalFormDecomposition",
    "NumericConfig",
    "OrbitRecord",
    "SearchConfig",
    "certify",
    "ellipsoid_system",
    "path_index_oracle",
    "index_at",
    "mean_index",
    "scan_tuples",
    "emit_report",
    "parse_system",
]
