"""Pydantic classes to store hypothesis checks, parity counts and the verdict of
a multiplicity certificate."""

from typing import Any

from pydantic import BaseModel, Field, computed_field

from index_jump.base.jump_tuple import JumpTuple
from index_jump.utils.constants import (
    EXIT_CODES,
    SCHEMA_VERSION,
    OrbitClass,
    ParityCase,
    Verdict,
)


class HypothesisCheck(BaseModel):
    orbit: str = Field(description="Orbit label")
    k: int = Field(description="1-based orbit position")
    check: str = Field(description="Check name e.g. 'index_exclusion'")
    passed: bool = Field(description="Whether the check passed")
    detail: str = Field(description="Failure detail", default="")


class HypothesisReport(BaseModel):
    parity_case: ParityCase = Field(description="Either 'n-even' or 'n-odd'")
    checks: list[HypothesisCheck] = Field(description="Per orbit checks")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[HypothesisCheck]:
        return [check for check in self.checks if not check.passed]


class ParityCounts(BaseModel):
    """N^{e,o}_{+,-} (n even) or H^{e,o}_{+,-} (n odd) for one jump tuple.

    'members' maps each set name e.g. 'plus_even' to the orbit labels counted.
    """

    N: int = Field(description="Jump level")
    plus_threshold: int = Field(description="Lower bound of the '+' sets")
    minus_threshold: int = Field(description="Upper bound of the '-' sets")
    members: dict[str, list[str]] = Field(description="Orbit labels per set")

    def count(self, name: str) -> int:
        return len(self.members.get(name, []))

    @computed_field
    @property
    def plus_even(self) -> int:
        return self.count("plus_even")

    @computed_field
    @property
    def plus_odd(self) -> int:
        return self.count("plus_odd")

    @computed_field
    @property
    def minus_even(self) -> int:
        return self.count("minus_even")

    @computed_field
    @property
    def minus_odd(self) -> int:
        return self.count("minus_odd")


class StageResult(BaseModel):
    stage: str = Field(description="Pipeline stage name")
    passed: bool = Field(description="Whether every check of the stage held")
    detail: str = Field(description="Values behind the outcome", default="")


class BoundClaim(BaseModel):
    claim: str = Field(description="Asserted lower bound")
    required: int = Field(description="Bound required by the multiplicity theorem")
    observed: int = Field(description="Value supported by the counts")
    witnesses: list[str] = Field(description="Orbits witnessing the bound")

    @computed_field
    @property
    def passed(self) -> bool:
        return self.observed >= self.required


class CertificateReport(BaseModel):
    n: int = Field(description="Half dimension")
    parity_case: ParityCase = Field(description="Either 'n-even' or 'n-odd'")
    method: str = Field(description="Certifier used e.g. 'EvenCertifier'")
    hypothesis: HypothesisReport = Field(description="Hypothesis checks")
    classifications: dict[str, OrbitClass] = Field(
        description="Orbit label -> stability class", default_factory=dict
    )
    chi_hat: dict[str, str] = Field(
        description="chi_hat per orbit", default_factory=dict
    )
    residual: str | None = Field(
        description="Mean index identity residual", default=None
    )
    mbar: int | None = Field(description="m_bar in force", default=None)
    eps: float | None = Field(description="Fractional defect bound", default=None)
    tuple_pair: list[JumpTuple] = Field(
        description="Jump tuple and its conjugate", default_factory=list
    )
    counts: ParityCounts | None = Field(description="Counts at N", default=None)
    conjugate_counts: ParityCounts | None = Field(
        description="Counts at N'", default=None
    )
    m_sets: dict[str, dict[str, int]] = Field(
        description="Orbit label -> low-index iterate counts", default_factory=dict
    )
    alternating_sum: int | None = Field(
        description="sum_{p <= P} (-1)^p M_p at N", default=None
    )
    middle_witnesses: list[str] = Field(
        description="Orbits with i(y^{2m}) = 2N - n - 1 (n odd)", default_factory=list
    )
    stages: list[StageResult] = Field(description="Pipeline log", default_factory=list)
    bounds: list[BoundClaim] = Field(
        description="Asserted bounds", default_factory=list
    )
    verdict: Verdict = Field(description="CERTIFIED, NON-REALIZABLE or INCONCLUSIVE")
    reason: str = Field(description="First failing stage or summary", default="")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[str(self.verdict)]

    def to_json(self) -> dict[str, Any]:
        return {"schema": SCHEMA_VERSION, **self.model_dump(mode="json")}


# Public Interface
__all__ = [
    "HypothesisCheck",
    "HypothesisReport",
    "ParityCounts",
    "StageResult",
    "BoundClaim",
    "CertificateReport",
]
