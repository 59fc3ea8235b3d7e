"""Index iteration engine.

- i(y, m) = m(i1 + S+ - C) + 2 * sum E(m*theta/(2*pi)) * S-(e^{i*theta}) - (S+ + C)
- mean index = i1 + S+ - C + sum (theta/pi) * S-(e^{i*theta})
- Viterbo index i(y^m) = i(y, m) - n.
"""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from numbers import Integral

import pandas as pd
from mpmath import mp

from index_jump.base.angle import UnitPoint, point_over_pi
from index_jump.base.orbit_record import OrbitRecord
from index_jump.utils.constants import Grading, Real
from index_jump.utils.dataframe_utils import rows_to_frame
from index_jump.utils.exact_utils import certified_round, to_mpf, working_precision
from index_jump.utils.exceptions import DomainError, HypothesisError

logger = logging.getLogger(__name__)


def _validate_iterate(m: int) -> None:
    if not isinstance(m, Integral) or m < 1:
        raise DomainError(f"Iterate m must be a positive integer; got {m}.")


def ceiling_term(omega: UnitPoint, m: int) -> int:
    """Certified E(m * theta / (2*pi)) for unit circle point e^{i*theta}."""

    return certified_round(lambda: m * point_over_pi(omega) / 2, mode="ceil")


def index_at(r: OrbitRecord, m: int) -> int:
    """Maslov-type index i(y, m) of the m-th iterate.

    Args:
        r (OrbitRecord): Prime closed characteristic.
        m (int): Positive iterate number.

    Returns:
        (int): Exact index; raises 'PrecisionError' if a ceiling term cannot be
            certified at the working precision.
    """

    _validate_iterate(m)

    s_plus, c = r.s_plus_one, r.c
    total = m * (r.i1 + s_plus - c) - (s_plus + c)

    for omega, s_minus in r.decomposition.minus_terms():
        total += 2 * s_minus * ceiling_term(omega, m)

    return total


def mean_index(r: OrbitRecord) -> Real:
    """Mean index, exact ('Fraction') unless irrational angles carry S- > 0."""

    return r.mean


def nullity_at(r: OrbitRecord, m: int) -> int:
    """nu(y, m) as total nu_omega over unit circle eigenvalues with omega^m = 1."""

    _validate_iterate(m)

    return r.decomposition.nullity(m)


def viterbo_at(r: OrbitRecord, m: int) -> int:
    """Viterbo index i(y^m) = i(y, m) - n."""

    return index_at(r, m) - r.n


def is_nondegenerate(r: OrbitRecord) -> bool:
    """Exactly one N1(1, b != 0) block and no other root of unity eigenvalue,
    equivalently nu(y, m) = 1 for every m."""

    forced = r.decomposition.forced_index()

    if forced is None:
        return False

    return not any(
        block.has_other_root_of_unity() or 1 in dict(block.circle_spectrum())
        for block in r.decomposition.non_forced_blocks()
    )


def index_rows(
    r: OrbitRecord, m_range: range, grading: Grading = Grading.MASLOV
) -> list[dict[str, str | int]]:
    shift = r.n if grading == Grading.VITERBO else 0

    return [
        {
            "label": r.label,
            "m": m,
            "i": index_at(r, m) - shift,
            "nu": nullity_at(r, m),
        }
        for m in m_range
    ]


def index_table(
    records: Sequence[OrbitRecord],
    m_range: range,
    grading: Grading = Grading.MASLOV,
    threads: int = 1,
) -> pd.DataFrame:
    """Index table with columns 'label', 'm', 'i', 'nu' in record order.

    Args:
        records (Sequence[OrbitRecord]): Orbit records.
        m_range (range): Iterates to tabulate.
        grading (Grading): Either 'maslov' (Default) or 'viterbo'.
        threads (int): Worker threads; output order is independent of it.

    Returns:
        (pd.DataFrame): One row per (orbit, iterate).
    """

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        chunks = executor.map(lambda r: index_rows(r, m_range, grading), records)
        rows = [row for chunk in chunks for row in chunk]

    return rows_to_frame(rows, ["label", "m", "i", "nu"])


def _mbar_holds(record: OrbitRecord, m: int, threshold: int, l_max: int) -> bool:
    base = {l: index_at(record, l) for l in range(1, l_max + 1)}

    return all(
        index_at(record, m + l) >= base[l] + threshold for l in range(1, l_max + 1)
    )


def mbar(records: Sequence[OrbitRecord], n: int, shift: int = 0) -> int:
    """Least m_bar with i(y_k, m + l) >= i(y_k, l) + n + 1 + shift for all l >= 1,
    m >= m_bar and every record.

    The safe bound m0 = ceil((n + 1 + shift + 2C) / mean) follows from the
    deviation bound; it is tightened by scanning m downwards while the inequality
    still holds for every l <= 10 * m0.

    Args:
        records (Sequence[OrbitRecord]): Orbit records with positive mean index.
        n (int): Half dimension.
        shift (int): Extra margin added to the n + 1 threshold (Default: 0).

    Returns:
        (int): Positive integer m_bar.
    """

    threshold = n + 1 + shift
    result = 1

    for record in records:
        with working_precision():
            mean = to_mpf(record.mean)

        if mean <= 0:
            raise HypothesisError(
                f"Mean index of orbit '{record.label}' is not positive."
            )

        with working_precision():
            safe = max(1, int(mp.ceil((threshold + 2 * record.c) / mean)))

        l_max = 10 * safe
        tight = safe

        while tight > 1 and _mbar_holds(record, tight - 1, threshold, l_max):
            tight -= 1

        logger.debug(
            "Orbit '%s': safe m_bar %d, tightened %d", record.label, safe, tight
        )
        result = max(result, tight)

    return result


# Public Interface
__all__ = [
    "ceiling_term",
    "index_at",
    "mean_index",
    "nullity_at",
    "viterbo_at",
    "is_nondegenerate",
    "index_rows",
    "index_table",
    "mbar",
]
