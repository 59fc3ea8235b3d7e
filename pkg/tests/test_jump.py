"""Test search and exact verification of common index jump tuples."""

from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from index_jump.base.data_class import SearchConfig
from index_jump.base.jump_tuple import JumpTuple
from index_jump.base.orbit_record import OrbitRecord
from index_jump.iteration import index_at, mbar
from index_jump.jump import (
    build_tuple,
    common_multiple,
    compute_offsets,
    conjugate_pair,
    offset_q,
    scan_tuples,
    verify_tuple,
)
from index_jump.utils.exceptions import (
    ConsistencyError,
    DomainError,
    SearchExhausted,
)
from tests.utils.test_utils import d, make_record, n1, r_irr, r_rat


def test_common_multiple(worked, quarter_rotation):
    """Check if M clears every rational angle denominator."""

    assert common_multiple([worked]) == 1
    assert common_multiple([quarter_rotation]) == 2
    assert common_multiple([quarter_rotation, make_record(1, r_rat(2, 3))]) == 6
    assert common_multiple([make_record(1, n1(), r_irr("2.5"))]) == 1


@pytest.mark.parametrize("N", [4, 6, 10, 40])
def test_worked_tuple(worked, N):
    """Check if every even N >= 4 yields m = N/2 with zero offsets."""

    t = build_tuple([worked], N, mbar=2, eps=0.05)

    assert t is not None
    assert (t.m, t.chi, t.delta, t.M_common) == ((N // 2,), (0,), (0,), 1)
    assert index_at(worked, 2 * t.m[0]) == 2 * N - 1


@pytest.mark.parametrize("N", [1, 2, 3, 5, 7])
def test_worked_tuple_rejected(worked, N):
    """Check if odd N (defect 1/2) and N below the m_bar floor are rejected."""

    assert build_tuple([worked], N, mbar=2, eps=0.05) is None


def test_scan_tuples(worked):
    tuples = scan_tuples([worked], mbar=2, eps=0.05, n_max=20, want=3)

    assert [t.N for t in tuples] == [4, 6, 8]


def test_scan_tuples_strided(worked):
    """Check if candidates are restricted to multiples of the stride."""

    config = SearchConfig(stride=4)
    tuples = scan_tuples([worked], mbar=2, eps=0.05, n_max=20, want=3, config=config)

    assert [t.N for t in tuples] == [4, 8, 12]


def test_scan_quarter_rotation(quarter_rotation):
    """Check if a rational rotation jumps at every N with 4N >= m_bar + 2."""

    bar = mbar([quarter_rotation], n=1)
    tuples = scan_tuples([quarter_rotation], bar, eps=0.05, n_max=10, want=3)

    assert bar == 4
    assert [(t.N, t.m) for t in tuples] == [(2, (4,)), (3, (6,)), (4, (8,))]
    assert all(t.delta == (0,) for t in tuples)


def test_conjugate_pair(worked):
    t = scan_tuples([worked], mbar=2, eps=0.05, n_max=20, want=1)[0]
    first, second = conjugate_pair([worked], t, mbar=2, eps=0.05, n_max=20)

    assert (first.N, second.N) == (4, 6)


def test_conjugate_pair_exhausted(quarter_rotation):
    """Check if a conjugate tuple must split C between both offsets."""

    t = scan_tuples([quarter_rotation], 4, eps=0.05, n_max=5, want=1)[0]

    with pytest.raises(SearchExhausted) as exc_info:
        conjugate_pair([quarter_rotation], t, 4, eps=0.05, n_max=5)

    assert str(exc_info.value) == "No conjugate tuple for N=2 with N' <= 5."
    assert exc_info.value.near_miss["target"] == [1]


def test_verify_tuple(worked):
    """Check if every identity is recorded and tampered tuples are caught."""

    good = build_tuple([worked], 4, mbar=2, eps=0.05)
    report = verify_tuple([worked], good, mbar=2)

    assert report.passed
    # 3 structure, 1 offsets, 4 checks for each m = 1, 2
    assert len(report.checks) == 12

    bad = JumpTuple(N=4, m=(3,), chi=(0,), M_common=1, eps=0.05, delta=(0,))
    report = verify_tuple([worked], bad, mbar=2)

    assert not report.passed
    failed = {check.identity for check in report.failures}
    assert failed >= {"structure", "offsets", "plus"}
    assert report.to_json()["passed"] is False


def test_compute_offsets(quarter_rotation):
    delta_k, q_offset = compute_offsets(quarter_rotation, 4, N=2)

    assert delta_k == 0
    assert [q_offset(m) for m in range(1, 9)] == [0, 0, 0, 1, 0, 0, 0, 1]
    assert offset_q(quarter_rotation, 1)(4) == 0


def test_compute_offsets_error():
    """Check if irrational fractional parts inside [delta, 1 - delta] are refused."""

    # 1.6/pi = 0.50929..., the middle of the excluded band
    record = make_record(1, n1(), r_irr("1.6"))

    with pytest.raises(ConsistencyError, match="fractional part 0.5092958"):
        compute_offsets(record, 1)

    # 2 * 1.6/pi = 1.01859...
    assert compute_offsets(record, 2)[0] == 1

    with pytest.raises(DomainError) as exc_info:
        compute_offsets(record, 0)

    assert str(exc_info.value) == "Iterate m_k must be positive; got 0."


@pytest.mark.parametrize(
    "records_, eps, n_max, exc_msg",
    [
        ([], 0.05, 10, "At least one orbit record is required."),
        (None, 0.6, 10, "eps must lie in (0, 1/2); got 0.6."),
        (None, 0.05, 0, "n_max must be positive; got 0."),
    ],
)
def test_search_validation(worked, records_, eps, n_max, exc_msg):
    records_ = [worked] if records_ is None else records_

    with pytest.raises(DomainError) as exc_info:
        scan_tuples(records_, mbar=2, eps=eps, n_max=n_max, want=1)

    assert str(exc_info.value) == exc_msg


def test_search_exhausted(worked):
    """Check if the best near miss is reported when no tuple exists."""

    with pytest.raises(SearchExhausted) as exc_info:
        scan_tuples([worked], mbar=2, eps=0.05, n_max=3, want=1)

    assert str(exc_info.value) == (
        "No jump tuple with N <= 3 at eps=0.05; increase n_max or eps."
    )
    assert exc_info.value.near_miss == {"N": 2, "max_defect": 0.0}


def test_scan_irrational_mean():
    """Check if records with an irrational mean index yield verified tuples."""

    # i1 = 2, N1(1, 1) <> R(1.6): mean index 2 + 1.6/pi
    record = make_record(2, n1(), r_irr("1.6"))
    bar = mbar([record], n=2)
    tuples = scan_tuples([record], bar, eps=0.05, n_max=10**4, want=3)

    assert not isinstance(record.mean, Fraction)
    assert len(tuples) == 3
    assert all(verify_tuple([record], t, bar).passed for t in tuples)
    # {m_k * theta / pi} = {(chi - {N / mean}) * mean}, below delta iff chi = 1
    assert all(t.delta == t.chi for t in tuples)


@pytest.mark.parametrize("threads", [2, 4])
def test_scan_tuples_threaded(worked, threads):
    """Check if threaded exact checks return the serial tuples in the same order."""

    records = [worked, make_record(2, n1(), r_irr("1.6"), label="y2")]
    bar = mbar(records, n=2)
    config = SearchConfig(chunk=256)

    serial = scan_tuples(records, bar, 0.05, 10**4, 4, config)
    threaded = scan_tuples(
        records, bar, 0.05, 10**4, 4, replace(config, threads=threads)
    )

    assert [t.N for t in threaded] == [t.N for t in serial]
    assert threaded == serial


def _random_system(rng: np.random.Generator, q: int) -> list[OrbitRecord]:
    """q records N1(1, 1) <> R(theta) or N1(1, 1) <> D(2) with mean in (0.3, 5)."""

    records = []

    while len(records) < q:
        label = f"y{len(records) + 1}"

        if rng.random() < 0.3:
            records.append(make_record(int(rng.integers(0, 4)), n1(), d(), label=label))
            continue

        theta = rng.uniform(0.2, 6.0)
        if abs(theta - np.pi) < 0.1:
            continue

        # mean index i1 + theta/pi
        i1 = int(rng.integers(-1, 4))
        if not 0.3 < i1 + theta / np.pi < 5:
            continue

        records.append(make_record(i1, n1(), r_irr(f"{theta:.10f}"), label=label))

    return records


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_random_system_tuples(seed):
    """Check if random systems of up to four orbits carry three verified tuples
    and a conjugate pair splitting every C(M_k)."""

    rng = np.random.default_rng(seed)
    records = _random_system(rng, int(rng.integers(1, 5)))
    bar = mbar(records, n=2)

    tuples = scan_tuples(records, bar, eps=0.05, n_max=10**8, want=3)

    assert len(tuples) == 3
    assert all(verify_tuple(records, t, bar).passed for t in tuples)

    first, second = conjugate_pair(records, tuples[0], bar, eps=0.05, n_max=10**8)

    assert first.N != second.N
    assert verify_tuple(records, second, bar).passed
    assert all(
        d1 + d2 == record.c
        for d1, d2, record in zip(first.delta, second.delta, records)
    )


@pytest.mark.slow
def test_worked_every_even_level(worked):
    """Check if every even N <= 10^4 from 4 on yields m = N/2 with zero offsets."""

    tuples = scan_tuples([worked], mbar=2, eps=0.05, n_max=10**4, want=10**4)

    assert [t.N for t in tuples] == list(range(4, 10**4 + 1, 2))
    assert all(t.m == (t.N // 2,) and t.delta == (0,) for t in tuples)
