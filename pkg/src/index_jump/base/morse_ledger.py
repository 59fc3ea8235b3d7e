"""Pydantic class to store Morse-type numbers and Betti coefficients over a
finite window of Viterbo indices."""

from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from index_jump.utils.constants import SCHEMA_VERSION


class MorseLedger(BaseModel):
    """Morse-type numbers M_p and Betti numbers b_p for P_lo <= p <= P_hi.

    Attributes:
        window (tuple[int, int]): Inclusive window (P_lo, P_hi) in Viterbo grading.
        morse (dict[int, int]): Mapping p -> M_p for every p in window.
        betti (dict[int, int]): Mapping p -> b_p for every p in window.
        chi_hat (dict[str, Fraction]): Mapping orbit label -> average Euler
            characteristic.
        covers_floor (bool): Whether window starts at or below the index floor,
            so that partial sums from P_lo equal sums from minus infinity.
        notice (str | None): Set if requested window was clipped.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    window: tuple[int, int] = Field(description="Inclusive Viterbo index window")
    morse: dict[int, int] = Field(description="Morse-type numbers M_p")
    betti: dict[int, int] = Field(description="Betti numbers b_p")
    chi_hat: dict[str, Fraction] = Field(description="chi_hat per orbit label")
    covers_floor: bool = Field(description="Window starts at the index floor")
    notice: str | None = Field(description="Clipping notice", default=None)

    @field_validator("window")
    @classmethod
    def validate_window(cls, window: tuple[int, int]) -> tuple[int, int]:
        if window[0] > window[1]:
            raise ValueError(f"Window {window} is empty.")

        return window

    @model_validator(mode="after")
    def validate_counts(self) -> "MorseLedger":
        expected = set(range(self.window[0], self.window[1] + 1))

        if set(self.morse) != expected or set(self.betti) != expected:
            raise ValueError("'morse' and 'betti' must cover every index in window.")

        if any(count < 0 for count in self.morse.values()):
            raise ValueError("Morse-type numbers must be non-negative.")

        return self

    @property
    def indices(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "window": list(self.window),
            "morse": {str(p): count for p, count in self.morse.items()},
            "betti": {str(p): count for p, count in self.betti.items()},
            "chi_hat": {label: str(value) for label, value in self.chi_hat.items()},
            "covers_floor": self.covers_floor,
            "notice": self.notice,
        }


# Public Interface
__all__ = ["MorseLedger"]
