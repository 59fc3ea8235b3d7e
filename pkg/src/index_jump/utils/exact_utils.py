"""Exact and high precision arithmetic helpers.

- Rational quantities are kept as 'Fraction' and never rounded.
- Quantities involving irrational angles are 'mpf' values evaluated at the
package working precision (default 256 bits, minimum 128 bits).
- Integer valued functions of such reals (ceiling, floor) are certified: a value
too close to an integer is recomputed at higher precision once, then rejected.
"""

import logging
import math
import threading
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from decimal import Decimal
from fractions import Fraction
from typing import TYPE_CHECKING, Literal

from mpmath import mp, mpf

from index_jump.utils.constants import Real
from index_jump.utils.exceptions import DomainError, PrecisionError

if TYPE_CHECKING:
    from index_jump.base.data_class import NumericConfig

logger = logging.getLogger(__name__)

MIN_PRECISION = 128

_settings: dict[str, int | str] = {
    "bits": 256,
    "escalation": 4,
    "guard": "1e-20",
}

# mpmath keeps a single global precision; blocks that change it must not overlap
_precision_lock = threading.RLock()


def set_precision(bits: int, escalation: int = 4, guard: str = "1e-20") -> None:
    """Set package wide working precision in bits (at least 128), the precision
    multiplier used to re-check near-integer values and the integer guard."""

    if bits < MIN_PRECISION:
        raise DomainError(f"Precision must be at least {MIN_PRECISION} bits.")

    if escalation < 2:
        raise DomainError(f"Escalation factor must be at least 2; got {escalation}.")

    if not mpf(guard) > 0:
        raise DomainError(f"Integer guard must be positive; got '{guard}'.")

    with _precision_lock:
        _settings.update({"bits": bits, "escalation": escalation, "guard": guard})


def configure_numerics(config: "NumericConfig") -> None:
    """Apply 'precision_bits', 'escalation' and 'ceil_guard' of a NumericConfig."""

    set_precision(config.precision_bits, config.escalation, config.ceil_guard)
    logger.debug(
        "Working precision %d bits, escalation x%d, guard %s.",
        config.precision_bits,
        config.escalation,
        config.ceil_guard,
    )


def get_precision() -> int:
    return int(_settings["bits"])


def get_guard() -> str:
    return str(_settings["guard"])


def get_escalation() -> int:
    return int(_settings["escalation"])


def decimal_digits(bits: int | None = None) -> int:
    """Number of significant decimal digits carried by 'bits'."""

    bits = get_precision() if bits is None else bits
    return int(bits * math.log10(2))


@contextmanager
def working_precision(scale: int = 1) -> Iterator[None]:
    """Run enclosed block at working precision multiplied by 'scale', or at the
    enclosing precision if that is higher."""

    with _precision_lock, mp.workprec(max(mp.prec, get_precision() * scale)):
        yield


@contextmanager
def working_digits(dps: int) -> Iterator[None]:
    """Run enclosed block at 'dps' decimal digits."""

    with _precision_lock, mp.workdps(dps):
        yield


def to_mpf(value: Real | int | Decimal | str) -> mpf:
    """Convert exact or decimal value to 'mpf' at the current precision."""

    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator

    if isinstance(value, Decimal):
        return mpf(str(value))

    return mpf(value)


def to_fraction(value: int | Decimal | str | Fraction) -> Fraction:
    """Convert integer, decimal or 'p/q' string to exact 'Fraction'."""

    if isinstance(value, Fraction):
        return value

    if isinstance(value, Decimal):
        return Fraction(value)

    return Fraction(str(value).strip())


def sum_reals(values: list[Real | int]) -> Real:
    """Sum keeping result exact if every term is exact."""

    exact = sum((v for v in values if isinstance(v, (int, Fraction))), Fraction(0))
    inexact = [v for v in values if not isinstance(v, (int, Fraction))]

    if not inexact:
        return exact

    return to_mpf(exact) + mp.fsum(inexact)


def frac_part(value: Real) -> Real:
    """Fractional part {x} = x - [x] in [0, 1)."""

    if isinstance(value, (int, Fraction)):
        return Fraction(value) - math.floor(value)

    return value - mp.floor(value)


def distance_to_integer(value: Real) -> Real:
    """Distance from 'value' to the nearest integer."""

    frac = frac_part(value)
    return min(frac, 1 - frac)


def certified_round(
    compute: Callable[[], Real], mode: Literal["ceil", "floor"] = "ceil"
) -> int:
    """Certified ceiling (E function) or floor of a real value.

    Args:
        compute (Callable[[], Real]):
            Zero-argument callable evaluating the real at the current mpmath
            precision. Exact callables return 'Fraction'.
        mode (Literal["ceil", "floor"]):
            Either "ceil" i.e. E(a) = min{k in Z | k >= a} or "floor" i.e. [a].

    Returns:
        (int): Rounded integer.
    """

    round_fn = math.ceil if mode == "ceil" else math.floor

    with working_precision():
        value = compute()

        if isinstance(value, (int, Fraction)):
            return round_fn(value)

        if distance_to_integer(value) >= mpf(get_guard()):
            return int(mp.ceil(value) if mode == "ceil" else mp.floor(value))

    logger.warning(
        "Value within %s of an integer at %d bits; escalating precision.",
        get_guard(),
        get_precision(),
    )

    with working_precision(get_escalation()):
        value = compute()

        if distance_to_integer(value) < mpf(get_guard()):
            raise PrecisionError(
                f"Cannot certify {mode} of {mp.nstr(value, 30)}: within "
                f"{get_guard()} of an integer boundary."
            )

        return int(mp.ceil(value) if mode == "ceil" else mp.floor(value))


def format_real(value: Real | int, digits: int = 30) -> str:
    """Render exact values as 'p/q' and inexact values as decimal strings."""

    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))

    return mp.nstr(value, digits)


def decimal_string(value: mpf) -> str:
    """Decimal string carrying every digit of the working precision."""

    return mp.nstr(value, decimal_digits(), strip_zeros=True)


# Public Interface
__all__ = [
    "MIN_PRECISION",
    "set_precision",
    "configure_numerics",
    "get_precision",
    "get_guard",
    "get_escalation",
    "decimal_digits",
    "working_precision",
    "working_digits",
    "to_mpf",
    "to_fraction",
    "sum_reals",
    "frac_part",
    "distance_to_integer",
    "certified_round",
    "format_real",
    "decimal_string",
]
