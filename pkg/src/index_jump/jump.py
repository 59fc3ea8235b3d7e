"""Search for and exact verification of common index jump tuples.

For orbits y_1..y_q with positive mean indices, a tuple (N, m_1..m_q) with

    m_k = ([N / (M * mean_k)] + chi_k) * M,   |{N / (M * mean_k)} - chi_k| < eps

aligns every iterate index around 2N:

- nu(2m_k +- m) = nu(m)
- i(2m_k + m) = 2N + i(m)
- i(2m_k - m) = 2N - i(m) - 2(S+ + Q_k(m))
- i(2m_k) = 2N - (S+ + C - 2 * Delta_k)

for 1 <= m <= m_bar. Candidates are prefiltered in vectorized float64 chunks;
acceptance is decided by exact verification only.
"""

import logging
import math
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from index_jump.base.angle import point_over_pi
from index_jump.base.data_class import SearchConfig
from index_jump.base.jump_tuple import JumpTuple, TupleCheck, TupleVerification
from index_jump.base.orbit_record import OrbitRecord
from index_jump.iteration import index_at, nullity_at
from index_jump.utils.constants import Real
from index_jump.utils.exact_utils import (
    certified_round,
    format_real,
    frac_part,
    to_mpf,
    working_precision,
)
from index_jump.utils.exceptions import (
    ConsistencyError,
    DomainError,
    HypothesisError,
    PrecisionError,
    SearchExhausted,
)

logger = logging.getLogger(__name__)


def common_multiple(records: Sequence[OrbitRecord]) -> int:
    """Least M with M * theta / pi integral for every rational angle theta in the
    unit circle spectrum of any record (1 if there are none)."""

    result = 1

    for record in records:
        for omega, _ in record.decomposition.circle_spectrum():
            ratio = point_over_pi(omega)

            if isinstance(ratio, Fraction) and ratio != 0:
                result = math.lcm(result, ratio.denominator)

    return result


def _quotient(record: OrbitRecord, N: int, M: int) -> Real:
    """N / (M * mean), exact when the mean index is."""

    if isinstance(record.mean, Fraction):
        return Fraction(N, M) / record.mean

    return to_mpf(Fraction(N, M)) / to_mpf(record.mean)


def _window_parts(record: OrbitRecord, m_k: int) -> list[tuple[Real, int, bool]]:
    """({m_k * theta / pi}, S-, is_rational) for every S- carrying eigenvalue."""

    parts = []

    with working_precision():
        for omega, s_minus in record.decomposition.minus_terms():
            value = m_k * point_over_pi(omega)
            parts.append((frac_part(value), s_minus, isinstance(value, Fraction)))

    return parts


def offset_q(record: OrbitRecord, m_k: int) -> Callable[[int], int]:
    """Q_k(m) = sum of S- over rational angles theta with m_k * theta / pi and
    m * theta / (2*pi) both integral."""

    exact_terms = [
        (ratio, s_minus)
        for omega, s_minus in record.decomposition.minus_terms()
        if isinstance(ratio := point_over_pi(omega), Fraction)
    ]

    def q_offset(m: int) -> int:
        return sum(
            s_minus
            for ratio, s_minus in exact_terms
            if (m_k * ratio).denominator == 1 and (m * ratio / 2).denominator == 1
        )

    return q_offset


def compute_offsets(
    record: OrbitRecord, m_k: int, N: int | None = None, delta: float | None = None
) -> tuple[int, Callable[[int], int]]:
    """Delta_k and Q_k(.) for iterate m_k of 'record'.

    - Delta_k = sum of S-(e^{i*theta}) over 0 < {m_k * theta / pi} < delta, with
    delta = 0.25 unless configured otherwise.
    - An irrational angle counts when its fractional part lies in (0, delta) and
    is left out when it lies in (1 - delta, 1). A fractional part in
    [delta, 1 - delta] raises ConsistencyError: m_k is not a jump iterate for
    that angle at this window.
    - Rational angles are exact: {m_k * theta / pi} = 0 is never counted and
    other values count when below delta.
    - With N supplied, Delta_k is cross-checked against the rearrangement
    (i(y, 2m_k) - 2N + S+ + C) / 2.
    - Q_k(m) = sum of S- over rational angles with {m_k*theta/pi} = {m*theta/(2pi)} = 0.

    Args:
        record (OrbitRecord): Orbit record.
        m_k (int): Iterate of the jump tuple.
        N (int | None): If provided, jump level used for the cross-check.
        delta (float | None): Window size (Default: SearchConfig.delta).

    Returns:
        (tuple[int, Callable[[int], int]]): Delta_k and the function m -> Q_k(m).
    """

    if m_k < 1:
        raise DomainError(f"Iterate m_k must be positive; got {m_k}.")

    delta = SearchConfig.delta if delta is None else delta
    parts = _window_parts(record, m_k)
    delta_k = 0

    for frac, s_minus, rational in parts:
        if not rational and delta <= frac <= 1 - delta:
            raise ConsistencyError(
                f"Orbit '{record.label}': fractional part {format_real(frac, 12)} of "
                f"{m_k}*theta/pi lies outside the window delta={delta}."
            )

        if 0 < frac < delta:
            delta_k += s_minus

    if N is not None:
        twice = index_at(record, 2 * m_k) - 2 * N + record.s_plus_one + record.c

        if twice != 2 * delta_k:
            raise ConsistencyError(
                f"Orbit '{record.label}': window count Delta={delta_k} disagrees with "
                f"rearranged value {Fraction(twice, 2)} at N={N}, m_k={m_k}."
            )

    return delta_k, offset_q(record, m_k)


def _check(
    record: OrbitRecord,
    k: int,
    identity: str,
    lhs,
    rhs,
    m: int | None = None,
    passed: bool | None = None,
) -> TupleCheck:
    return TupleCheck(
        orbit=record.label,
        k=k,
        m=m,
        identity=identity,
        lhs=str(lhs),
        rhs=str(rhs),
        passed=lhs == rhs if passed is None else passed,
    )


def _structure_checks(
    record: OrbitRecord, k: int, t: JumpTuple, mbar: int
) -> list[TupleCheck]:
    idx = k - 1

    def quotient() -> Real:
        return _quotient(record, t.N, t.M_common)

    with working_precision():
        defect = abs(frac_part(quotient()) - t.chi[idx])

    expected = (certified_round(quotient, mode="floor") + t.chi[idx]) * t.M_common

    return [
        _check(record, k, "structure", t.m[idx], expected),
        _check(
            record,
            k,
            "structure",
            format_real(defect, 12),
            f"< {t.eps}",
            passed=bool(defect < t.eps),
        ),
        _check(
            record,
            k,
            "structure",
            2 * t.m[idx],
            f">= {mbar + 2}",
            passed=2 * t.m[idx] >= mbar + 2,
        ),
    ]


def verify_tuple(
    records: Sequence[OrbitRecord],
    t: JumpTuple,
    mbar: int,
    delta: float | None = None,
) -> TupleVerification:
    """Check every structural condition and jump identity of tuple 't' exactly.

    Args:
        records (Sequence[OrbitRecord]): Orbit records in tuple order.
        t (JumpTuple): Candidate tuple.
        mbar (int): m_bar in force.
        delta (float | None): Window size used for Delta_k.

    Returns:
        (TupleVerification): One 'TupleCheck' per identity with both sides.
    """

    checks = []

    for k, record in enumerate(records, start=1):
        m_k = t.m[k - 1]
        s_plus = record.s_plus_one
        checks.extend(_structure_checks(record, k, t, mbar))

        # compute_offsets with N also checks i(2m_k) = 2N - (S+ + C - 2 Delta_k)
        try:
            delta_k, q_offset = compute_offsets(record, m_k, t.N, delta)
        except ConsistencyError as e:
            checks.append(_check(record, k, "offsets", str(e), "consistent"))
            q_offset = offset_q(record, m_k)
        else:
            checks.append(_check(record, k, "offsets", t.delta[k - 1], delta_k))

        for m in range(1, mbar + 1):
            i_m, nu_m = index_at(record, m), nullity_at(record, m)

            checks.append(
                _check(record, k, "nullity", nullity_at(record, 2 * m_k + m), nu_m, m)
            )
            plus = index_at(record, 2 * m_k + m)
            checks.append(_check(record, k, "plus", plus, 2 * t.N + i_m, m))

            if 2 * m_k - m < 1:
                checks.append(
                    _check(record, k, "minus", 2 * m_k - m, ">= 1", m, passed=False)
                )
                continue

            checks.append(
                _check(record, k, "nullity", nullity_at(record, 2 * m_k - m), nu_m, m)
            )
            checks.append(
                _check(
                    record,
                    k,
                    "minus",
                    index_at(record, 2 * m_k - m),
                    2 * t.N - i_m - 2 * (s_plus + q_offset(m)),
                    m,
                )
            )

    return TupleVerification(N=t.N, checks=checks)


def build_tuple(
    records: Sequence[OrbitRecord],
    N: int,
    mbar: int,
    eps: float,
    config: SearchConfig | None = None,
) -> JumpTuple | None:
    """Exact construction and verification of the tuple at level N.

    Returns:
        (JumpTuple | None): Verified tuple, or None if any condition fails.
    """

    config = config or SearchConfig()
    M = common_multiple(records)
    m_list, chi_list, delta_list, defects = [], [], [], []

    for record in records:
        with working_precision():
            frac = frac_part(_quotient(record, N, M))

        chi = 1 if 2 * frac >= 1 else 0
        defect = abs(frac - chi)

        if defect >= eps:
            return None

        floor = certified_round(lambda r=record: _quotient(r, N, M), mode="floor")
        m_k = (floor + chi) * M

        if 2 * m_k < mbar + 2:
            return None

        try:
            delta_k, _ = compute_offsets(record, m_k, N, config.delta)
        except ConsistencyError as e:
            logger.debug("N=%d rejected: %s", N, e)
            return None

        m_list.append(m_k)
        chi_list.append(chi)
        delta_list.append(delta_k)
        defects.append(format_real(defect, 12))

    candidate = JumpTuple(
        N=N,
        m=tuple(m_list),
        chi=tuple(chi_list),
        M_common=M,
        eps=eps,
        delta=tuple(delta_list),
        defects=tuple(defects),
    )
    report = verify_tuple(records, candidate, mbar, config.delta)

    if not report.passed:
        logger.debug("N=%d rejected by %d failed checks.", N, len(report.failures))
        return None

    return candidate


def _validate_search(records: Sequence[OrbitRecord], eps: float, n_max: int) -> None:
    if not records:
        raise DomainError("At least one orbit record is required.")

    for record in records:
        with working_precision():
            positive = to_mpf(record.mean) > 0

        if not positive:
            raise HypothesisError(
                f"Mean index of orbit '{record.label}' is not positive."
            )

    if not 0 < eps < 0.5:
        raise DomainError(f"eps must lie in (0, 1/2); got {eps}.")

    if n_max < 1:
        raise DomainError(f"n_max must be positive; got {n_max}.")


def iter_tuples(
    records: Sequence[OrbitRecord],
    mbar: int,
    eps: float,
    n_max: int,
    config: SearchConfig | None = None,
) -> Iterator[JumpTuple]:
    """Yield verified tuples in increasing N up to 'n_max'.

    Raises 'SearchExhausted' (carrying the best near-miss) if nothing is found.
    """

    config = config or SearchConfig()
    _validate_search(records, eps, n_max)

    M = common_multiple(records)
    stride = config.stride or 1

    with working_precision():
        inv_means = np.array([float(1 / (M * to_mpf(r.mean))) for r in records])
        window_angles = [
            np.array(
                [
                    float(to_mpf(point_over_pi(omega)))
                    for omega, _ in r.decomposition.minus_terms()
                    if not isinstance(point_over_pi(omega), Fraction)
                ],
                dtype=np.float64,
            )
            for r in records
        ]

    def exact(level: np.int64) -> JumpTuple | None:
        try:
            return build_tuple(records, int(level), mbar, eps, config)
        except PrecisionError as e:
            logger.warning("N=%d skipped: %s", level, e)
            return None

    near_miss = {"N": None, "max_defect": math.inf}
    found = 0
    step = config.chunk * stride
    executor = ThreadPoolExecutor(max_workers=max(1, config.threads))
    # executor.map submits a whole chunk at once; stay lazy when serial
    run = executor.map if config.threads > 1 else map

    try:
        for start in range(stride, n_max + 1, step):
            levels = np.arange(
                start, min(start + step, n_max + 1), stride, dtype=np.int64
            )
            quotients = levels[:, None].astype(np.float64) * inv_means[None, :]
            floors = np.floor(quotients)
            fracs = quotients - floors
            chis = (fracs >= 0.5).astype(np.float64)
            max_defect = np.abs(fracs - chis).max(axis=1)

            best = int(np.argmin(max_defect))
            if max_defect[best] < near_miss["max_defect"]:
                near_miss = {
                    "N": int(levels[best]),
                    "max_defect": float(max_defect[best]),
                }

            m_est = (floors + chis) * M
            mask = max_defect < eps + config.margin
            mask &= (2 * m_est >= mbar + 2).all(axis=1)

            for k, angles in enumerate(window_angles):
                if angles.size == 0:
                    continue

                products = m_est[:, k, None] * angles[None, :]
                distance = np.abs(products - np.rint(products))
                mask &= (distance < config.delta + config.margin).all(axis=1)

            # Results come back in level order whatever the thread count
            for candidate in run(exact, levels[mask]):
                if candidate is not None:
                    found += 1
                    yield candidate
    finally:
        executor.shutdown(wait=True, cancel_futures=True)

    if found == 0:
        raise SearchExhausted(
            f"No jump tuple with N <= {n_max} at eps={eps}; increase n_max or eps.",
            near_miss=near_miss,
        )


def scan_tuples(
    records: Sequence[OrbitRecord],
    mbar: int,
    eps: float,
    n_max: int,
    want: int,
    config: SearchConfig | None = None,
) -> list[JumpTuple]:
    """Up to 'want' verified tuples with N <= 'n_max', in increasing N.

    Args:
        records (Sequence[OrbitRecord]): Orbits with positive mean index.
        mbar (int): m_bar in force.
        eps (float): Fractional defect bound in (0, 1/2).
        n_max (int): Largest candidate N.
        want (int): Number of tuples requested.
        config (SearchConfig | None): Window size, chunking, stride and threads.

    Returns:
        (list[JumpTuple]): Verified tuples; raises 'SearchExhausted' if none.
    """

    tuples = []

    for candidate in iter_tuples(records, mbar, eps, n_max, config):
        tuples.append(candidate)
        logger.info("Accepted jump tuple N=%d m=%s", candidate.N, candidate.m)

        if len(tuples) >= want:
            break

    if len(tuples) < want:
        logger.warning("Only %d of %d tuples found below %d.", len(tuples), want, n_max)

    return tuples


def conjugate_pair(
    records: Sequence[OrbitRecord],
    t: JumpTuple,
    mbar: int,
    eps: float,
    n_max: int,
    config: SearchConfig | None = None,
) -> tuple[JumpTuple, JumpTuple]:
    """Second verified tuple t' != t with Delta_k + Delta'_k = C(M_k) for all k.

    Returns:
        (tuple[JumpTuple, JumpTuple]): (t, t'); raises 'SearchExhausted' if none.
    """

    targets = [record.c for record in records]

    for candidate in iter_tuples(records, mbar, eps, n_max, config):
        if candidate.N == t.N:
            continue

        if all(d + d2 == c for d, d2, c in zip(t.delta, candidate.delta, targets)):
            logger.info("Conjugate tuples N=%d and N'=%d", t.N, candidate.N)
            return t, candidate

    raise SearchExhausted(
        f"No conjugate tuple for N={t.N} with N' <= {n_max}.",
        near_miss={"N": t.N, "delta": list(t.delta), "target": targets},
    )


# Public Interface
__all__ = [
    "common_multiple",
    "compute_offsets",
    "offset_q",
    "verify_tuple",
    "build_tuple",
    "iter_tuples",
    "scan_tuples",
    "conjugate_pair",
]
