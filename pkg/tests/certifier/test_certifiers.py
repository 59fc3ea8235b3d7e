"""Test parity specific thresholds and claims of concrete certifiers."""

import pytest

from index_jump.base.certificate_report import ParityCounts
from index_jump.base.data_class import SearchConfig
from index_jump.base.jump_tuple import JumpTuple
from index_jump.certifier import EvenCertifier, OddCertifier
from index_jump.utils.constants import ParityCase
from index_jump.utils.exceptions import DomainError
from index_jump.utils.module_utils import build_instance


@pytest.mark.parametrize(
    "certifier, N, n, expected",
    [
        (EvenCertifier(), 10, 2, ((18, 16), 17, -4)),
        (EvenCertifier(), 10, 4, ((16, 14), 15, -6)),
        (OddCertifier(), 10, 1, ((20, 16), 19, -4)),
        (OddCertifier(), 10, 3, ((18, 14), 17, -6)),
    ],
)
def test_thresholds(certifier, N, n, expected):
    """Check '+'/'-' thresholds, truncation index and low-index ceiling."""

    thresholds, top, ceiling = expected

    assert certifier.thresholds(N, n) == thresholds
    assert certifier.alternating_top(N, n) == top
    assert certifier.m_set_ceiling(n) == ceiling


def test_build_instance():
    certifier = build_instance("OddCertifier", threads=3)

    assert isinstance(certifier, OddCertifier)
    assert certifier.parity_case == ParityCase.ODD
    assert certifier.threads == 3
    assert certifier.config.threads == 3


def test_search_threads():
    """Check if the tuple search runs on the larger of both thread settings."""

    config = SearchConfig(threads=4)

    assert EvenCertifier(config=config, threads=2).config.threads == 4
    assert EvenCertifier(config=config, threads=6).threads == 6
    assert config.threads == 4


def test_parity_mismatch(worked):
    with pytest.raises(DomainError) as exc_info:
        EvenCertifier().certify([worked], 3)

    assert str(exc_info.value) == "EvenCertifier handles n-even; got n = 3."


def test_even_bound_claims():
    """Check if n/2 orbits are needed on each side of the jump level."""

    counts = ParityCounts(
        N=10,
        plus_threshold=16,
        minus_threshold=14,
        members={"plus_even": ["y1", "y3"], "minus_even": ["y2"]},
    )
    claims = EvenCertifier().bound_claims(4, counts)

    assert [claim.required for claim in claims] == [2, 2, 4]
    assert [claim.observed for claim in claims] == [2, 1, 3]
    assert [claim.passed for claim in claims] == [True, False, False]
    assert claims[2].witnesses == ["y1", "y3", "y2"]


def test_parity_counts(ellipsoids):
    """Check if orbits are sorted by the index of their 2m_k-th iterate."""

    records = ellipsoids[1]
    t = JumpTuple(N=4, m=(2,), chi=(0,), M_common=1, eps=0.05, delta=(0,))

    counts = OddCertifier().parity_counts(records, 1, t)
    assert (counts.plus_threshold, counts.minus_threshold) == (8, 4)
    assert counts.members == {
        "plus_even": [],
        "plus_odd": [],
        "minus_even": [],
        "minus_odd": [],
    }

    counts = EvenCertifier().parity_counts(records, 2, t)
    assert counts.members["plus_even"] == ["y1"]
