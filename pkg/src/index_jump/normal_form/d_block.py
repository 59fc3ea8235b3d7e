"""Implementation of DBlock class

- Concrete implementation of 'NormalForm' abstract class
- Hyperbolic block D(lambda) = diag(lambda, 1/lambda) with |lambda| not 0 or 1.
"""

from decimal import Decimal
from typing import Any, ClassVar

from mpmath import mp, mpf
from pydantic import Field, field_validator

from index_jump.base.angle import UnitPoint
from index_jump.base.normal_form import ZERO_SPLIT, NormalForm, SplittingPair
from index_jump.utils.constants import BlockType


class DBlock(NormalForm):
    block_type: ClassVar[BlockType] = BlockType.D
    on_circle: ClassVar[bool] = False

    lam: Decimal = Field(
        description="Real eigenvalue off the unit circle", alias="lambda"
    )

    @field_validator("lam")
    @classmethod
    def validate_lam(cls, lam: Decimal) -> Decimal:
        if lam == 0 or abs(lam) == 1:
            raise ValueError("D block requires |lambda| not in {0, 1}.")

        return lam

    def matrix(self) -> mp.matrix:
        lam = mpf(str(self.lam))
        return mp.matrix([[lam, 0], [0, 1 / lam]])

    def circle_spectrum(self) -> list[tuple[UnitPoint, int]]:
        return []

    def eigenvalues(self) -> list[tuple[Any, int]]:
        lam = mpf(str(self.lam))
        return [(lam, 1), (1 / lam, 1)]

    def splitting(self, omega: UnitPoint) -> SplittingPair:
        return ZERO_SPLIT

    def to_json(self) -> dict[str, Any]:
        return {"type": str(self.block_type), "lambda": str(self.lam)}


# Public Interface
__all__ = ["DBlock"]
