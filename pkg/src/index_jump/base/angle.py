"""Pydantic class to store rotation angles and unit circle points.

- Rational angles store theta/pi as a reduced fraction 'num/den'.
- Irrational angles store theta (radians) as a decimal string; irrationality is
declared by the caller via kind="irrational" and never inferred from digits.
"""

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Any, Literal, TypeAlias

from mpmath import mp, mpf
from pydantic import BaseModel, ConfigDict, Field, model_validator

from index_jump.utils.constants import AngleKind, Real
from index_jump.utils.exact_utils import (
    decimal_digits,
    decimal_string,
    to_mpf,
    working_precision,
)
from index_jump.utils.exceptions import DomainError


class Angle(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: AngleKind = Field(description="Either 'rational_pi' or 'irrational'")
    num: int | None = Field(description="Numerator of theta/pi", default=None)
    den: int | None = Field(description="Denominator of theta/pi", default=None)
    value: str | None = Field(
        description="Decimal string of theta in radians", default=None
    )

    @model_validator(mode="before")
    @classmethod
    def reduce_fraction(cls, data: Any) -> Any:
        if not isinstance(data, dict) or data.get("kind") != "rational_pi":
            return data

        num, den = data.get("num"), data.get("den")

        if num is None or den is None:
            raise ValueError("Rational angle requires both 'num' and 'den'.")

        if int(den) == 0:
            raise ValueError("Angle denominator cannot be zero.")

        # Lowest terms with positive denominator
        ratio = Fraction(int(num), int(den))

        return {**data, "num": ratio.numerator, "den": ratio.denominator}

    @model_validator(mode="after")
    def validate_range(self) -> "Angle":
        if self.kind == "rational_pi":
            if self.value is not None:
                raise ValueError("Rational angle cannot carry a decimal 'value'.")

            if not 0 < Fraction(self.num, self.den) < 2:
                raise ValueError("Angle must lie strictly between 0 and 2*pi.")

            return self

        if self.value is None or self.num is not None or self.den is not None:
            raise ValueError("Irrational angle requires 'value' only.")

        try:
            Decimal(self.value)
        except InvalidOperation as e:
            raise ValueError(f"'{self.value}' is not a decimal string.") from e

        with working_precision():
            if not 0 < mpf(self.value) < 2 * mp.pi:
                raise ValueError("Angle must lie strictly between 0 and 2*pi.")

        return self

    @classmethod
    def rational_pi(cls, num: int, den: int = 1) -> "Angle":
        """Angle theta with theta/pi = num/den."""

        return cls(kind="rational_pi", num=num, den=den)

    @classmethod
    def irrational(cls, value: str | mpf) -> "Angle":
        """Angle theta (radians) declared irrational."""

        if not isinstance(value, str):
            value = decimal_string(value)

        return cls(kind="irrational", value=value)

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational_pi"

    @property
    def is_pi(self) -> bool:
        return self.is_rational and self.num == 1 and self.den == 1

    def over_pi(self) -> Real:
        """theta/pi, exact for rational angles."""

        if self.is_rational:
            return Fraction(self.num, self.den)

        with working_precision():
            return mpf(self.value) / mp.pi

    def over_two_pi(self) -> Real:
        """theta/(2*pi), exact for rational angles."""

        return self.over_pi() / 2

    def radians(self) -> mpf:
        with working_precision():
            if self.is_rational:
                return to_mpf(Fraction(self.num, self.den)) * mp.pi

            return mpf(self.value)

    def conjugate(self) -> "Angle":
        """Angle 2*pi - theta, i.e. the complex conjugate point."""

        if self.is_rational:
            ratio = 2 - Fraction(self.num, self.den)
            return Angle.rational_pi(ratio.numerator, ratio.denominator)

        with working_precision():
            return Angle.irrational(2 * mp.pi - mpf(self.value))

    def to_json(self) -> dict[str, str | int]:
        if self.is_rational:
            return {"kind": self.kind, "num": self.num, "den": self.den}

        return {"kind": self.kind, "value": self.value}

    def __str__(self) -> str:
        if self.is_rational:
            return f"{self.num}/{self.den}*pi"

        return self.value


# Unit circle point: 1, -1 or e^{i*theta}
UnitPoint: TypeAlias = Literal[1, -1] | Angle


def point_over_pi(omega: UnitPoint) -> Real:
    """Argument of 'omega' divided by pi, in [0, 2)."""

    if isinstance(omega, Angle):
        return omega.over_pi()

    return Fraction(0) if omega == 1 else Fraction(1)


def same_point(first: UnitPoint, second: UnitPoint) -> bool:
    """Check if two unit circle points coincide.

    Exact points are compared exactly. Irrational points are compared at the
    working precision with a margin of ten decimal digits; an exact point never
    equals an irrational one.
    """

    with working_precision():
        lhs, rhs = point_over_pi(first), point_over_pi(second)

        if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
            return lhs == rhs

        if isinstance(lhs, Fraction) or isinstance(rhs, Fraction):
            return False

        return abs(lhs - rhs) < mpf(10) ** (10 - decimal_digits())


def conjugate_point(omega: UnitPoint) -> UnitPoint:
    if isinstance(omega, Angle):
        return omega.conjugate()

    return omega


def parse_point(spec: Any) -> UnitPoint:
    """Parse unit circle point given as 1, -1, an 'Angle' or its JSON mapping.

    Strings of the form 'rational_pi:p/q' and 'irrational:<decimal>' are also
    accepted. Anything else (e.g. a generic complex number) is rejected.
    """

    if isinstance(spec, Angle):
        return spec

    if isinstance(spec, dict):
        try:
            return Angle(**spec)
        except ValueError as e:
            raise DomainError(f"Invalid angle for unit circle point: {e}") from e

    if isinstance(spec, bool):
        raise DomainError(f"'{spec}' is not a unit circle point.")

    if isinstance(spec, int) and spec in {1, -1}:
        return spec

    if isinstance(spec, str):
        text = spec.strip()

        if text in {"1", "-1"}:
            return int(text)

        kind, _, payload = text.partition(":")

        try:
            if kind == "rational_pi":
                num, _, den = payload.partition("/")
                return Angle.rational_pi(int(num), int(den or 1))

            if kind == "irrational":
                return Angle.irrational(payload)
        except ValueError as e:
            raise DomainError(f"Invalid angle for unit circle point: {e}") from e

    raise DomainError(f"'{spec}' is not a unit circle point (use 1, -1 or an angle).")


# Public Interface
__all__ = [
    "Angle",
    "UnitPoint",
    "point_over_pi",
    "same_point",
    "conjugate_point",
    "parse_point",
]
