"""Hypothesis validation, orbit classification and the multiplicity certificate.

'certify' dispatches on the parity of n to 'EvenCertifier' or 'OddCertifier'
(see 'index_jump.certifier'), which re-run the counting argument on a concrete
orbit system and return a 'CertificateReport'.
"""

import logging
from collections.abc import Sequence

from mpmath import mp

from index_jump.base.certificate_report import (
    CertificateReport,
    HypothesisCheck,
    HypothesisReport,
)
from index_jump.base.data_class import SearchConfig
from index_jump.base.orbit_record import OrbitRecord
from index_jump.iteration import index_at, is_nondegenerate
from index_jump.utils.constants import BlockType, CertMethod, OrbitClass, ParityCase
from index_jump.utils.exact_utils import to_mpf, working_precision
from index_jump.utils.exceptions import DomainError
from index_jump.utils.module_utils import build_instance

logger = logging.getLogger(__name__)

# Maslov-type indices excluded for every iterate of an index perfect system
EXCLUDED_INDICES = {
    ParityCase.EVEN: frozenset({-1}),
    ParityCase.ODD: frozenset({-2, -1, 0}),
}


def excluded_iterates(r: OrbitRecord, excluded: frozenset[int]) -> list[int]:
    """Iterates m with i(y, m) in 'excluded'.

    Since i(y, m) >= m * mean - (S+ + C), only m <= (max + S+ + C) / mean can hit
    an excluded value; larger iterates are provably above it.
    """

    with working_precision():
        bound = (max(excluded) + r.deviation_bound) / to_mpf(r.mean)
        m_max = max(0, int(mp.floor(bound)) + 1)

    return [m for m in range(1, m_max + 1) if index_at(r, m) in excluded]


def _hypothesis_check(
    record: OrbitRecord, k: int, check: str, passed: bool, detail: str
) -> HypothesisCheck:
    return HypothesisCheck(
        orbit=record.label,
        k=k,
        check=check,
        passed=passed,
        detail="" if passed else detail,
    )


def validate_hypotheses(
    records: Sequence[OrbitRecord], n: int
) -> HypothesisReport:
    """Check positive mean index, non-degeneracy and index exclusion per orbit.

    Args:
        records (Sequence[OrbitRecord]): Orbit records of one system.
        n (int): Half dimension; its parity selects the excluded indices.

    Returns:
        (HypothesisReport): Per orbit pass/fail details; never raises for failed
            checks.
    """

    parity_case = ParityCase.of(n)
    excluded = EXCLUDED_INDICES[parity_case]
    checks = []

    for k, record in enumerate(records, start=1):
        with working_precision():
            positive = bool(to_mpf(record.mean) > 0)

        checks.extend(
            [
                _hypothesis_check(
                    record,
                    k,
                    "dimension",
                    record.n == n,
                    f"orbit half dimension {record.n} differs from n = {n}",
                ),
                _hypothesis_check(
                    record, k, "mean_positive", positive, "mean index not positive"
                ),
                _hypothesis_check(
                    record,
                    k,
                    "nondegenerate",
                    is_nondegenerate(record),
                    "iterates are degenerate",
                ),
            ]
        )

        hits = excluded_iterates(record, excluded) if positive else []
        detail = ", ".join(f"(k={k}, m={m}): i = {index_at(record, m)}" for m in hits)

        checks.append(
            _hypothesis_check(
                record,
                k,
                "index_exclusion",
                positive and not hits,
                detail or "undecidable without positive mean index",
            )
        )

    report = HypothesisReport(parity_case=parity_case, checks=checks)
    logger.info(
        "Hypotheses (%s): %d checks, %d failures.",
        parity_case,
        len(checks),
        len(report.failures),
    )

    return report


def classify_orbit(r: OrbitRecord) -> OrbitClass:
    """'hyperbolic' if every non-forced block is D(lambda), 'elliptic' if every
    block has unit circle spectrum, else 'nonhyperbolic-mixed'."""

    others = r.decomposition.non_forced_blocks()

    if not others:
        return OrbitClass.ELLIPTIC

    if all(block.block_type == BlockType.D for block in others):
        return OrbitClass.HYPERBOLIC

    if all(block.on_circle for block in r.decomposition.blocks):
        return OrbitClass.ELLIPTIC

    return OrbitClass.MIXED


def _run(
    method: CertMethod,
    records: Sequence[OrbitRecord],
    n: int,
    config: SearchConfig | None,
    threads: int,
) -> CertificateReport:
    certifier = build_instance(str(method), config=config, threads=threads)

    return certifier.certify(records, n)


def certify_even(
    records: Sequence[OrbitRecord],
    n: int,
    config: SearchConfig | None = None,
    threads: int = 1,
) -> CertificateReport:
    if n % 2:
        raise DomainError(f"certify_even requires even n; got {n}.")

    return _run(CertMethod.EVEN, records, n, config, threads)


def certify_odd(
    records: Sequence[OrbitRecord],
    n: int,
    config: SearchConfig | None = None,
    threads: int = 1,
) -> CertificateReport:
    if n % 2 == 0:
        raise DomainError(f"certify_odd requires odd n; got {n}.")

    return _run(CertMethod.ODD, records, n, config, threads)


def certify(
    records: Sequence[OrbitRecord],
    n: int,
    config: SearchConfig | None = None,
    threads: int = 1,
) -> CertificateReport:
    """Run the certificate pipeline matching the parity of n.

    Args:
        records (Sequence[OrbitRecord]): Proposed census of prime orbits.
        n (int): Half dimension.
        config (SearchConfig | None): Tuple search configuration.
        threads (int): Worker threads for the tuple search and the Morse ledger.

    Returns:
        (CertificateReport): Report with verdict CERTIFIED, NON-REALIZABLE or
            INCONCLUSIVE.
    """

    if n < 1:
        raise DomainError(f"Half dimension n must be positive; got {n}.")

    if ParityCase.of(n) == ParityCase.EVEN:
        return certify_even(records, n, config, threads)

    return certify_odd(records, n, config, threads)


# Public Interface
__all__ = [
    "EXCLUDED_INDICES",
    "excluded_iterates",
    "validate_hypotheses",
    "classify_orbit",
    "certify_even",
    "certify_odd",
    "certify",
]
