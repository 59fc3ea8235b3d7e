"""Test exact and high precision helpers."""

from fractions import Fraction

import pytest
from mpmath import mp, mpf

from index_jump.base.data_class import NumericConfig
from index_jump.utils.exact_utils import (
    certified_round,
    configure_numerics,
    distance_to_integer,
    format_real,
    frac_part,
    get_escalation,
    get_guard,
    get_precision,
    set_precision,
    sum_reals,
    to_fraction,
    working_precision,
)
from index_jump.utils.exceptions import DomainError, PrecisionError
from index_jump.utils.utils import parse_count, parse_int_range


@pytest.mark.parametrize(
    "value, mode, expected",
    [
        (Fraction(7, 2), "ceil", 4),
        (Fraction(7, 2), "floor", 3),
        (Fraction(-1, 3), "ceil", 0),
        (Fraction(4), "ceil", 4),
        (Fraction(4), "floor", 4),
    ],
)
def test_certified_round_exact(value, mode, expected):
    """Check if exact values are rounded without precision escalation."""

    assert certified_round(lambda: value, mode=mode) == expected


def test_certified_round_irrational():
    """Check if ceiling and floor of sqrt(2) * 10 are certified."""

    assert certified_round(lambda: mp.sqrt(2) * 10, mode="ceil") == 15
    assert certified_round(lambda: mp.sqrt(2) * 10, mode="floor") == 14


def test_certified_round_rejects_integer_boundary():
    """Check if PrecisionError is raised when an inexact value sits on an integer."""

    with pytest.raises(PrecisionError):
        certified_round(lambda: mp.sqrt(2) ** 2, mode="ceil")


def test_frac_part():
    """Check if fractional part lies in [0, 1) for exact and inexact values."""

    assert frac_part(Fraction(-1, 4)) == Fraction(3, 4)
    assert frac_part(Fraction(9, 4)) == Fraction(1, 4)

    with working_precision():
        assert abs(frac_part(mp.pi) - (mp.pi - 3)) < mpf(10) ** -50
        assert distance_to_integer(mpf("2.9")) < mpf("0.1000001")


def test_sum_reals():
    """Check if sums stay exact unless an inexact term is present."""

    assert sum_reals([Fraction(1, 2), 1, Fraction(1, 3)]) == Fraction(11, 6)

    with working_precision():
        total = sum_reals([Fraction(1, 2), mp.pi])
        assert isinstance(total, mpf)
        assert abs(total - mp.pi - mpf("0.5")) < mpf(10) ** -50


def test_format_real():
    assert format_real(Fraction(6, 4)) == "3/2"
    assert format_real(3) == "3"

    with working_precision():
        assert format_real(mp.pi, 5) == "3.1416"


def test_set_precision():
    """Check if precision below 128 bits is rejected and valid values persist."""

    with pytest.raises(DomainError) as exc_info:
        set_precision(64)

    assert str(exc_info.value) == "Precision must be at least 128 bits."

    set_precision(512)
    assert get_precision() == 512

    set_precision(256)
    assert get_precision() == 256


@pytest.fixture
def default_numerics():
    yield
    configure_numerics(NumericConfig())


def test_configure_numerics(default_numerics):
    """Check if precision, escalation and integer guard follow NumericConfig."""

    def near_three() -> mpf:
        return 3 + mpf(10) ** -25

    with pytest.raises(PrecisionError):
        certified_round(near_three, mode="ceil")

    configure_numerics(
        NumericConfig(precision_bits=512, escalation=3, ceil_guard="1e-30")
    )

    assert (get_precision(), get_escalation(), get_guard()) == (512, 3, "1e-30")
    assert certified_round(near_three, mode="ceil") == 4

    with working_precision():
        assert mp.prec == 512


@pytest.mark.parametrize(
    "escalation, guard, exc_msg",
    [
        (1, "1e-20", "Escalation factor must be at least 2; got 1."),
        (4, "0", "Integer guard must be positive; got '0'."),
    ],
)
def test_set_precision_error(escalation, guard, exc_msg):
    with pytest.raises(DomainError) as exc_info:
        set_precision(256, escalation, guard)

    assert str(exc_info.value) == exc_msg


def test_to_fraction():
    assert to_fraction("3/9") == Fraction(1, 3)
    assert to_fraction("1.25") == Fraction(5, 4)


@pytest.mark.parametrize(
    "text, expected",
    [("1..5", (1, 5)), ("-10..200", (-10, 200)), ("3..3", (3, 3))],
)
def test_parse_int_range(text, expected):
    assert parse_int_range(text) == expected


@pytest.mark.parametrize(
    "text, exc_msg",
    [
        ("5", "'5' is not a range of the form 'lo..hi'."),
        ("5..1", "Range '5..1' is empty."),
    ],
)
def test_parse_int_range_error(text, exc_msg):
    with pytest.raises(ValueError) as exc_info:
        parse_int_range(text)

    assert str(exc_info.value) == exc_msg


def test_parse_count():
    """Check if counts are accepted in plain and scientific notation."""

    assert parse_count("1e7") == 10**7
    assert parse_count("250") == 250

    with pytest.raises(ValueError) as exc_info:
        parse_count("2.5")

    assert str(exc_info.value) == "'2.5' is not a positive integer."
