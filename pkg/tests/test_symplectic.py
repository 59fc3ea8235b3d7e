"""Test concrete symplectic matrices and the monodromy shape census."""

import pytest
from mpmath import mp

from index_jump.base.angle import Angle
from index_jump.normal_form import N2Block
from index_jump.symplectic import (
    algebraic_spectrum,
    decomposition_matrix,
    diamond_sum,
    monodromy_shape,
    spectrum_on_circle,
    standard_j,
    validate_symplectic,
)
from index_jump.utils.exceptions import DimensionError
from tests.utils.test_utils import d, make_record, n1, r_irr, r_rat

HALF_PI = (
    "1.570796326794896619231321691639751442098584699687552910487472296153908203143"
)


def test_standard_j():
    assert standard_j(1).tolist() == [[0, -1], [1, 0]]


def test_diamond_sum_layout():
    """Check if quadrants are interleaved."""

    out = diamond_sum([[1, 2], [3, 4]], [[5, 6], [7, 8]])

    assert out.tolist() == [
        [1, 0, 2, 0],
        [0, 5, 0, 6],
        [3, 0, 4, 0],
        [0, 7, 0, 8],
    ]


def test_diamond_sum_error():
    with pytest.raises(DimensionError) as exc_info:
        diamond_sum([[1, 2, 3]] * 3, [[1, 0], [0, 1]])

    assert str(exc_info.value) == (
        "Diamond sum requires square matrices of even dimension; got 3x3."
    )


def test_validate_symplectic():
    assert validate_symplectic([[1, 1], [0, 1]])[0]

    passed, residual = validate_symplectic([[2, 0], [0, 1]])
    assert not passed
    assert residual == 1

    with pytest.raises(DimensionError) as exc_info:
        validate_symplectic([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    assert str(exc_info.value) == (
        "Symplectic check requires square even dimension; got 3x3."
    )


def test_decomposition_matrix_symplectic():
    """Check if the diamond sum of blocks is symplectic."""

    record = make_record(1, n1(), r_irr("2.5"), d("-2"), r_rat(1, 3))
    matrix = decomposition_matrix(record.decomposition)

    assert (matrix.rows, matrix.cols) == (8, 8)
    assert validate_symplectic(matrix)[0]


def test_spectra():
    record = make_record(1, n1(), r_rat(1, 3), d("2"))

    assert spectrum_on_circle(record.decomposition) == {
        1: 1,
        Angle.rational_pi(1, 3): 1,
        Angle.rational_pi(5, 3): 1,
    }

    multiplicities = [mult for _, mult in algebraic_spectrum(record.decomposition)]
    assert sum(multiplicities) == 6

    with mp.workdps(30):
        moduli = sorted(
            float(abs(value)) for value, _ in algebraic_spectrum(record.decomposition)
        )

    assert moduli == pytest.approx([0.5, 1, 1, 1, 2])


def test_monodromy_shape():
    """Check the block census of closed characteristic monodromy matrices."""

    trivial_n2 = N2Block(theta=Angle.irrational(HALF_PI), B=("1", "1", "0", "-1"))

    shape = monodromy_shape(make_record(1, n1(), r_irr("2.5"), d()).decomposition)
    assert (shape.r, shape.s, shape.r_star, shape.r_zero) == (1, 1, 0, 0)
    assert shape.matches

    shape = monodromy_shape(make_record(1, n1(), trivial_n2).decomposition)
    assert (shape.r_star, shape.r_zero) == (0, 1)
    assert shape.matches

    shape = monodromy_shape(make_record(1, n1(), r_rat(1, 3)).decomposition)
    assert shape.has_forced
    assert len(shape.others) == 1
    assert not shape.matches

    assert not monodromy_shape(make_record(1, d()).decomposition).has_forced
