"""Pydantic classes to store common index jump tuples and their verification."""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from index_jump.utils.constants import Identity


class JumpTuple(BaseModel):
    model_config = ConfigDict(frozen=True)

    N: int = Field(description="Common jump level N", gt=0)
    m: tuple[int, ...] = Field(description="Iterates m_k, one per orbit")
    chi: tuple[int, ...] = Field(description="Rounding choices chi_k in {0, 1}")
    M_common: int = Field(description="Common multiple of rational angles", gt=0)
    eps: float = Field(description="Fractional defect bound", gt=0, lt=0.5)
    delta: tuple[int, ...] = Field(description="Offsets Delta_k, one per orbit")
    defects: tuple[str, ...] = Field(
        description="|{N/(M*mean_k)} - chi_k| as decimal strings", default=()
    )

    @field_validator("chi")
    @classmethod
    def validate_chi(cls, chi: tuple[int, ...]) -> tuple[int, ...]:
        if any(c not in {0, 1} for c in chi):
            raise ValueError("'chi' entries must be 0 or 1.")

        return chi

    @model_validator(mode="after")
    def validate_lengths(self) -> "JumpTuple":
        if not len(self.m) == len(self.chi) == len(self.delta):
            raise ValueError("'m', 'chi' and 'delta' must have one entry per orbit.")

        if any(m_k < 1 for m_k in self.m) or any(d < 0 for d in self.delta):
            raise ValueError("'m' entries must be positive and 'delta' non-negative.")

        return self

    def to_json(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


class TupleCheck(BaseModel):
    orbit: str = Field(description="Orbit label")
    k: int = Field(description="1-based orbit position")
    m: int | None = Field(description="Iterate offset m, if applicable", default=None)
    identity: Identity = Field(description="Checked identity")
    lhs: str = Field(description="Left hand side")
    rhs: str = Field(description="Right hand side")
    passed: bool = Field(description="Whether the identity holds")


class TupleVerification(BaseModel):
    N: int = Field(description="Jump level of the verified tuple")
    checks: list[TupleCheck] = Field(description="Every identity checked")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[TupleCheck]:
        return [check for check in self.checks if not check.passed]

    def to_json(self) -> dict[str, Any]:
        return {
            "N": self.N,
            "passed": self.passed,
            "num_checks": len(self.checks),
            "failures": [check.model_dump(mode="json") for check in self.failures],
        }


# Public Interface
__all__ = ["JumpTuple", "TupleCheck", "TupleVerification"]
