"""Pydantic class to store one prime closed characteristic."""

from functools import cached_property

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from index_jump.base.angle import point_over_pi
from index_jump.base.decomposition import NormalFormDecomposition
from index_jump.utils.constants import Real
from index_jump.utils.exact_utils import sum_reals, working_precision


class OrbitRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str = Field(description="Orbit label e.g. 'y1'")
    n: int = Field(description="Half dimension of the ambient space", gt=0)
    i1: int = Field(description="Maslov-type index i(y, 1) of the prime iterate")
    decomposition: NormalFormDecomposition = Field(
        description="Normal form decomposition of the monodromy matrix"
    )
    metadata: dict[str, str] = Field(
        description="Free-form metadata e.g. period 'tau'", default_factory=dict
    )

    @model_validator(mode="after")
    def validate_dimension(self) -> "OrbitRecord":
        if self.decomposition.n != self.n:
            raise ValueError(
                f"Orbit '{self.label}' has decomposition half-dimension "
                f"{self.decomposition.n} but n = {self.n}."
            )

        return self

    @computed_field(description="Splitting number S+ of the monodromy at 1")
    @cached_property
    def s_plus_one(self) -> int:
        return self.decomposition.splitting_at(1).s_plus

    @computed_field(description="Total S- over unit circle points other than 1")
    @cached_property
    def c(self) -> int:
        return self.decomposition.collision_count()

    @cached_property
    def mean(self) -> Real:
        """Mean index i1 + S+ - C + sum(theta/pi * S-); exact without irrational
        angles."""

        with working_precision():
            terms = [self.i1 + self.s_plus_one - self.c]
            terms.extend(
                point_over_pi(omega) * s_minus
                for omega, s_minus in self.decomposition.minus_terms()
            )

            return sum_reals(terms)

    @property
    def deviation_bound(self) -> int:
        """S+ + C bounding |i(m) - m * mean| from above."""

        return self.s_plus_one + self.c


# Public Interface
__all__ = ["OrbitRecord"]
