"""Morse-theoretic bookkeeping in Viterbo grading.

- chi_hat(y) = (-1)^{i(y)} if i(y^2) - i(y) is even, else (-1)^{i(y)} / 2.
- M_p counts iterates y_k^m with i(y_k^m) = p whose index differs from i(y_k)
by an even number (critical module of dimension one).
- b_p = 1 for even p >= 0, else 0.
- u_P = (-1)^P * sum_{p <= P} (-1)^p (M_p - b_p) is non-negative for every
realizable system.
"""

import logging
from collections import Counter
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pandas as pd
from mpmath import mp

from index_jump.base.morse_ledger import MorseLedger
from index_jump.base.orbit_record import OrbitRecord
from index_jump.iteration import is_nondegenerate, viterbo_at
from index_jump.utils.constants import ParityCase, Real
from index_jump.utils.dataframe_utils import rows_to_frame
from index_jump.utils.exact_utils import sum_reals, to_mpf, working_precision
from index_jump.utils.exceptions import DomainError, HypothesisError

logger = logging.getLogger(__name__)


def euler_hat(r: OrbitRecord) -> Fraction:
    """Average Euler characteristic of a non-degenerate orbit.

    Args:
        r (OrbitRecord): Prime closed characteristic.

    Returns:
        (Fraction): One of 1, -1, 1/2, -1/2.
    """

    if not is_nondegenerate(r):
        raise HypothesisError(
            f"Orbit '{r.label}' is degenerate; chi_hat requires nu(y, m) = 1 for all m."
        )

    first, second = viterbo_at(r, 1), viterbo_at(r, 2)
    sign = 1 if first % 2 == 0 else -1

    if (second - first) % 2 == 0:
        return Fraction(sign)

    return Fraction(sign, 2)


def identity_residual(records: Sequence[OrbitRecord]) -> Real:
    """sum_k chi_hat(y_k) / mean(y_k) - 1/2; exact when every mean index is."""

    terms = []

    for record in records:
        with working_precision():
            if to_mpf(record.mean) <= 0:
                raise HypothesisError(
                    f"Mean index of orbit '{record.label}' is not positive."
                )

        chi = euler_hat(record)

        if isinstance(record.mean, Fraction):
            terms.append(chi / record.mean)
        else:
            with working_precision():
                terms.append(to_mpf(chi) / record.mean)

    with working_precision():
        return sum_reals(terms + [Fraction(-1, 2)])


def critical_dimension(r: OrbitRecord, m: int) -> int:
    """1 if i(y^m) - i(y) is even, else 0."""

    return 1 if (viterbo_at(r, m) - viterbo_at(r, 1)) % 2 == 0 else 0


def alternating_iterate_count(r: OrbitRecord, m: int, start: int = 1) -> int:
    """sum (-1)^{i(y^j)} * dim over the 2m consecutive iterates from 'start'."""

    return sum(
        (-1) ** (viterbo_at(r, j) % 2) * critical_dimension(r, j)
        for j in range(start, start + 2 * m)
    )


def index_floor(records: Sequence[OrbitRecord], n: int) -> int:
    """Lower bound -n - max(S+ + C) of every Viterbo index of the system."""

    if not records:
        return -n

    return -n - max(record.s_plus_one + record.c for record in records)


def iterate_bound(r: OrbitRecord, upper: int) -> int:
    """Largest iterate whose Viterbo index may still be <= 'upper'."""

    with working_precision():
        bound = (upper + r.n + 2 * (r.s_plus_one + r.c)) / to_mpf(r.mean)
        return max(0, int(mp.floor(bound)) + 1)


def _orbit_counts(r: OrbitRecord, lower: int, upper: int) -> Counter:
    counts = Counter()
    first = viterbo_at(r, 1)

    for m in range(1, iterate_bound(r, upper) + 1):
        index = viterbo_at(r, m)

        if lower <= index <= upper and (index - first) % 2 == 0:
            counts[index] += 1

    return counts


def betti_number(p: int) -> int:
    return 1 if p >= 0 and p % 2 == 0 else 0


def betti_partial_sum(upper: int, lower: int = 0) -> int:
    """sum_{p = lower}^{upper} b_p."""

    lower = max(lower, 0)

    if upper < lower:
        return 0

    return upper // 2 - (lower - 1) // 2


def betti_closed_form(N: int, n: int) -> tuple[int, int, int]:
    """(upper, partial sum, closed form) of the Betti sum closing the Morse chain.

    - n even: sum_{p=0}^{2N-n-2} b_p = N - n/2.
    - n odd: sum_{p=0}^{2N-n-1} b_p = N - (n-1)/2.
    """

    if ParityCase.of(n) == ParityCase.EVEN:
        upper, target = 2 * N - n - 2, N - n // 2
    else:
        upper, target = 2 * N - n - 1, N - (n - 1) // 2

    return upper, betti_partial_sum(upper), target


def morse_numbers(
    records: Sequence[OrbitRecord],
    window: tuple[int, int],
    n: int | None = None,
    threads: int = 1,
) -> MorseLedger:
    """Morse-type numbers over 'window' with per-orbit chi_hat.

    Windows reaching below the index floor are clipped to it; the ledger then
    'covers_floor' and partial sums from its start are sums from minus infinity.

    Args:
        records (Sequence[OrbitRecord]): Non-degenerate orbits with positive mean.
        window (tuple[int, int]): Inclusive (P_lo, P_hi) in Viterbo grading.
        n (int | None): Half dimension; taken from records if None.
        threads (int): Worker threads; counts merge deterministically.

    Returns:
        (MorseLedger): Ledger for the (possibly clipped) window.
    """

    lower, upper = window

    if lower > upper:
        raise DomainError(f"Window {window} is empty.")

    n = records[0].n if n is None and records else (n or 1)
    floor = index_floor(records, n)
    notice = None

    if lower < floor <= upper:
        notice = f"Window start {lower} clipped to index floor {floor}."
        logger.warning(notice)
        lower = floor

    for record in records:
        with working_precision():
            if to_mpf(record.mean) <= 0:
                raise HypothesisError(
                    f"Mean index of orbit '{record.label}' is not positive."
                )

    chi_hat = {record.label: euler_hat(record) for record in records}

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        per_orbit = list(
            executor.map(lambda r: _orbit_counts(r, lower, upper), records)
        )

    total = sum(per_orbit, Counter())
    indices = range(lower, upper + 1)

    logger.info(
        "Morse ledger on [%d, %d]: %d iterates counted.",
        lower,
        upper,
        sum(total.values()),
    )

    return MorseLedger(
        window=(lower, upper),
        morse={p: total.get(p, 0) for p in indices},
        betti={p: betti_number(p) for p in indices},
        chi_hat=chi_hat,
        covers_floor=lower <= floor,
        notice=notice,
    )


def _check_coverage(ledger: MorseLedger, P: int) -> None:
    if not ledger.covers_floor:
        raise DomainError(
            f"Ledger window starts at {ledger.window[0]} above the index floor."
        )

    if P > ledger.window[1]:
        raise DomainError(f"P={P} lies above ledger window end {ledger.window[1]}.")


def alternating_sum(ledger: MorseLedger, P: int) -> int:
    """sum_{p <= P} (-1)^p M_p."""

    _check_coverage(ledger, P)

    return sum(
        (-1) ** (p % 2) * ledger.morse[p] for p in range(ledger.window[0], P + 1)
    )


def morse_inequality(ledger: MorseLedger, P: int) -> tuple[int, bool]:
    """u_P = (-1)^P * sum_{p <= P} (-1)^p (M_p - b_p) and whether u_P >= 0.

    Args:
        ledger (MorseLedger): Ledger covering the index floor up to P.
        P (int): Truncation index.

    Returns:
        (tuple[int, bool]): u_P and the sign report.
    """

    _check_coverage(ledger, P)

    total = sum(
        (-1) ** (p % 2) * (ledger.morse[p] - ledger.betti[p])
        for p in range(ledger.window[0], P + 1)
    )
    u_value = (-1) ** (P % 2) * total

    return u_value, u_value >= 0


def ledger_frame(ledger: MorseLedger) -> pd.DataFrame:
    """Table with columns 'p', 'M_p', 'b_p', 'u_p' (u_p empty if floor uncovered)."""

    rows = []
    u_value = 0

    for p in ledger.indices:
        u_value = ledger.morse[p] - ledger.betti[p] - u_value
        rows.append(
            {
                "p": p,
                "M_p": ledger.morse[p],
                "b_p": ledger.betti[p],
                "u_p": u_value if ledger.covers_floor else pd.NA,
            }
        )

    return rows_to_frame(rows, ["p", "M_p", "b_p", "u_p"])


# Public Interface
__all__ = [
    "euler_hat",
    "identity_residual",
    "critical_dimension",
    "alternating_iterate_count",
    "index_floor",
    "iterate_bound",
    "betti_number",
    "betti_partial_sum",
    "betti_closed_form",
    "morse_numbers",
    "alternating_sum",
    "morse_inequality",
    "ledger_frame",
]
