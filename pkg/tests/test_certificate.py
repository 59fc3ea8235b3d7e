"""Test hypothesis validation, orbit classification and the certificate verdicts."""

import pytest

from index_jump.base.data_class import SearchConfig
from index_jump.certificate import (
    certify,
    certify_even,
    certify_odd,
    classify_orbit,
    excluded_iterates,
    validate_hypotheses,
)
from index_jump.utils.constants import OrbitClass, Verdict
from index_jump.utils.exceptions import DomainError
from tests.utils.test_utils import d, make_record, n1, r_irr, r_rat


@pytest.mark.parametrize(
    "blocks_, expected",
    [
        ((n1(),), OrbitClass.ELLIPTIC),
        ((n1(), d(), d("-3")), OrbitClass.HYPERBOLIC),
        ((n1(), r_irr("2.5"), r_rat(1, 3)), OrbitClass.ELLIPTIC),
        ((n1(), r_irr("2.5"), d()), OrbitClass.MIXED),
    ],
)
def test_classify_orbit(blocks_, expected):
    assert classify_orbit(make_record(1, *blocks_)) == expected


def test_excluded_iterates():
    """Check if only iterates hitting an excluded index are returned."""

    record = make_record(-1, n1(), r_rat(3, 2))

    assert excluded_iterates(record, frozenset({-1})) == [1]
    assert excluded_iterates(record, frozenset({-2, -1, 0})) == [1, 2, 4]


def test_validate_hypotheses(worked, quarter_rotation, circle):
    assert validate_hypotheses([worked], 2).passed

    report = validate_hypotheses([quarter_rotation], 1)
    assert [check.check for check in report.failures] == ["nondegenerate"]

    report = validate_hypotheses([circle], 2)
    assert [check.check for check in report.failures] == ["dimension"]
    assert report.failures[0].detail == "orbit half dimension 1 differs from n = 2"


def test_validate_hypotheses_failures():
    """Check if index exclusion failures name the offending iterate."""

    report = validate_hypotheses([make_record(-1, n1(), r_rat(3, 2))], 2)
    exclusion = [check for check in report.failures if check.check == "index_exclusion"]

    assert exclusion[0].detail == "(k=1, m=1): i = -1"

    report = validate_hypotheses([make_record(-1, n1())], 1)

    assert {check.check for check in report.failures} == {
        "mean_positive",
        "index_exclusion",
    }


def test_certify_circle(ellipsoids):
    """Check the certificate of a round two dimensional orbit."""

    report = certify(ellipsoids[1], 1)

    assert report.verdict == Verdict.CERTIFIED
    assert report.exit_code == 0
    assert report.method == "OddCertifier"
    assert [t.N for t in report.tuple_pair] == [4, 6]
    assert report.middle_witnesses == ["y1"]
    assert all(claim.passed for claim in report.bounds)


@pytest.mark.parametrize("n", [2, 3])
def test_certify_ellipsoid(ellipsoids, n):
    """Check if non-resonant ellipsoids pass every stage with n witnesses."""

    report = certify(ellipsoids[n], n, threads=2)
    print(f"\n\n{report.reason}\n{[t.N for t in report.tuple_pair]}\n")

    assert report.verdict == Verdict.CERTIFIED
    assert all(stage.passed for stage in report.stages)
    assert all(claim.passed for claim in report.bounds)
    assert report.bounds[-1].observed >= n
    assert set(report.classifications.values()) == {OrbitClass.ELLIPTIC}
    assert report.to_json()["verdict"] == "CERTIFIED"

    first, second = report.tuple_pair
    assert all(
        d1 + d2 == record.c
        for d1, d2, record in zip(first.delta, second.delta, ellipsoids[n])
    )


@pytest.mark.slow
def test_certify_ellipsoid_four(ellipsoids):
    """Check if the eight dimensional ellipsoid is certified at the default search
    settings with four non-hyperbolic witnesses."""

    report = certify(ellipsoids[4], 4, threads=4)
    print(f"\n\n{report.reason}\n{[t.N for t in report.tuple_pair]}\n")

    assert report.verdict == Verdict.CERTIFIED
    assert all(stage.passed for stage in report.stages)
    assert report.bounds[-1].observed >= 4

    non_hyperbolic = [
        label
        for label, orbit_class in report.classifications.items()
        if orbit_class != OrbitClass.HYPERBOLIC
    ]
    assert len(non_hyperbolic) >= 4


@pytest.mark.parametrize("n, stage", [(2, "residual"), (3, "ledger")])
def test_certify_planted(planted, n, stage):
    """Check if a single hyperbolic orbit is refuted in dimensions 4 and 6."""

    report = certify(planted[n], n)

    assert report.verdict == Verdict.NON_REALIZABLE
    assert report.exit_code == 1
    assert report.stages[-1].stage == stage
    assert report.reason.startswith(f"Stage '{stage}' failed")


def test_certify_degenerate(quarter_rotation):
    report = certify([quarter_rotation], 1)

    assert report.verdict == Verdict.NON_REALIZABLE
    assert report.reason == (
        "Stage 'hypotheses' failed: y1: nondegenerate (iterates are degenerate)"
    )


def test_certify_inconclusive(ellipsoids):
    """Check if an exhausted tuple search is inconclusive, not a refutation."""

    report = certify(ellipsoids[2], 2, config=SearchConfig(n_max=3))

    assert report.verdict == Verdict.INCONCLUSIVE
    assert report.exit_code == 2
    assert report.reason == (
        "No jump tuple with N <= 3 at eps=0.05; increase n_max or eps."
    )


@pytest.mark.parametrize(
    "fn, n, exc_msg",
    [
        (certify, 0, "Half dimension n must be positive; got 0."),
        (certify_even, 3, "certify_even requires even n; got 3."),
        (certify_odd, 2, "certify_odd requires odd n; got 2."),
    ],
)
def test_certify_error(worked, fn, n, exc_msg):
    with pytest.raises(DomainError) as exc_info:
        fn([worked], n)

    assert str(exc_info.value) == exc_msg
