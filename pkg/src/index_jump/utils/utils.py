"""Generic helper functions."""

from decimal import Decimal, InvalidOperation


def parse_int_range(text: str) -> tuple[int, int]:
    """Parse inclusive integer range 'lo..hi' e.g. '-10..200'."""

    lo, sep, hi = text.partition("..")

    if not sep:
        raise ValueError(f"'{text}' is not a range of the form 'lo..hi'.")

    lo, hi = int(lo), int(hi)

    if lo > hi:
        raise ValueError(f"Range '{text}' is empty.")

    return lo, hi


def parse_count(text: str) -> int:
    """Parse positive integer given in plain or scientific notation e.g. '1e7'."""

    try:
        value = Decimal(text)
    except InvalidOperation as e:
        raise ValueError(f"'{text}' is not a number.") from e

    if value != value.to_integral_value() or value < 1:
        raise ValueError(f"'{text}' is not a positive integer.")

    return int(value)


# Public Interface
__all__ = ["parse_int_range", "parse_count"]
