"""Test splitting numbers of whole decompositions."""

import pytest
from hypothesis import given, settings

from index_jump.base.angle import Angle
from index_jump.base.decomposition import NormalFormDecomposition
from index_jump.splitting import collision_count, splitting_at
from tests.utils.test_utils import blocks, d, make_record, n1, n2_quarter, r_rat


@pytest.mark.parametrize(
    "omega, expected",
    [
        (1, (2, 2)),
        ("1", (2, 2)),
        ("rational_pi:1/2", (1, 2)),
        (Angle.rational_pi(3, 2), (2, 1)),
        (-1, (0, 0)),
        ("irrational:2.5", (0, 0)),
    ],
)
def test_splitting_at(omega, expected):
    """Check if splitting numbers add up over blocks and vanish off the spectrum."""

    record = make_record(1, n1(), n1(1, 0), r_rat(1, 2), n2_quarter(trivial=False))

    assert splitting_at(record.decomposition, omega).as_tuple() == expected


@pytest.mark.parametrize(
    "blocks_, expected",
    [
        ((n1(), d()), 0),
        ((n1(), r_rat(1, 2)), 1),
        ((n1(), r_rat(1, 2), r_rat(5, 3)), 2),
        ((n1(), n2_quarter(trivial=False)), 2),
        ((n1(), n2_quarter(trivial=True)), 0),
        ((n1(-1, -1),), 1),
    ],
)
def test_collision_count(blocks_, expected):
    assert collision_count(make_record(1, *blocks_).decomposition) == expected


@settings(max_examples=50, deadline=None)
@given(first=blocks(), second=blocks())
def test_splitting_additive(first, second):
    """Check if the splitting of a diamond sum is the sum of block splittings."""

    n = (first.dim + second.dim) // 2
    decomposition = NormalFormDecomposition(n=n, blocks=(first, second))

    for omega, _ in decomposition.circle_spectrum():
        total = first.splitting(omega) + second.splitting(omega)
        assert splitting_at(decomposition, omega).as_tuple() == total.as_tuple()


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(first=blocks(), second=blocks())
def test_splitting_additive_many(first, second):
    """Check additivity on a thousand random pairs and (0, 0) off the spectrum."""

    n = (first.dim + second.dim) // 2
    decomposition = NormalFormDecomposition(n=n, blocks=(first, second))

    for omega, _ in decomposition.circle_spectrum():
        total = first.splitting(omega) + second.splitting(omega)
        assert splitting_at(decomposition, omega).as_tuple() == total.as_tuple()

    off_spectrum = Angle.irrational("0.01234567")
    assert splitting_at(decomposition, off_spectrum).as_tuple() == (0, 0)
