"""Implementation of N1Block class

- Concrete implementation of 'NormalForm' abstract class
- Shear block N1(lambda, b) = [[lambda, b], [0, lambda]] with lambda = +1 or -1.
"""

from decimal import Decimal
from typing import Any, ClassVar, Literal

from mpmath import mp, mpf
from pydantic import Field

from index_jump.base.angle import UnitPoint, same_point
from index_jump.base.normal_form import ZERO_SPLIT, NormalForm, SplittingPair
from index_jump.utils.constants import BlockType


class N1Block(NormalForm):
    """Shear block with double eigenvalue lambda = +1 or -1.

    - N1(1, b): S+ = S- = 1 at omega = 1 if b >= 0, else 0.
    - N1(-1, b): S+ = S- = 1 at omega = -1 if b <= 0, else 0.
    """

    block_type: ClassVar[BlockType] = BlockType.N1

    lam: Literal[1, -1] = Field(description="Eigenvalue +1 or -1", alias="lambda")
    b: Decimal = Field(description="Off-diagonal shear entry")

    def matrix(self) -> mp.matrix:
        return mp.matrix([[self.lam, mpf(str(self.b))], [0, self.lam]])

    def circle_spectrum(self) -> list[tuple[UnitPoint, int]]:
        # Kernel of M - lambda*I is one dimensional unless b = 0
        return [(self.lam, 1 if self.b != 0 else 2)]

    def eigenvalues(self) -> list[tuple[Any, int]]:
        return [(mpf(self.lam), 2)]

    def splitting(self, omega: UnitPoint) -> SplittingPair:
        if not same_point(omega, self.lam):
            return ZERO_SPLIT

        counted = self.b >= 0 if self.lam == 1 else self.b <= 0

        return SplittingPair(s_plus=int(counted), s_minus=int(counted))

    def to_json(self) -> dict[str, Any]:
        return {"type": str(self.block_type), "lambda": self.lam, "b": str(self.b)}


# Public Interface
__all__ = ["N1Block"]
