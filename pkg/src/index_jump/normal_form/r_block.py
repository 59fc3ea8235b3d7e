"""Implementation of RBlock class

- Concrete implementation of 'NormalForm' abstract class
- Rotation block R(theta) = [[cos, -sin], [sin, cos]] with theta != pi.
"""

from typing import Any, ClassVar

from mpmath import mp
from pydantic import Field, field_validator

from index_jump.base.angle import Angle, UnitPoint, same_point
from index_jump.base.normal_form import ZERO_SPLIT, NormalForm, SplittingPair
from index_jump.utils.constants import BlockType


class RBlock(NormalForm):
    """Rotation by theta.

    The eigenvalue e^{i*theta} has positive Krein sign, so that
    S+ = 0, S- = 1 at e^{i*theta} and S+ = 1, S- = 0 at e^{-i*theta}.
    """

    block_type: ClassVar[BlockType] = BlockType.R

    theta: Angle = Field(description="Rotation angle in (0, pi) or (pi, 2*pi)")

    @field_validator("theta")
    @classmethod
    def validate_theta(cls, theta: Angle) -> Angle:
        if theta.is_pi:
            raise ValueError("R block requires theta != pi; use N1(-1, b) instead.")

        return theta

    def matrix(self) -> mp.matrix:
        theta = self.theta.radians()
        cos, sin = mp.cos(theta), mp.sin(theta)

        return mp.matrix([[cos, -sin], [sin, cos]])

    def circle_spectrum(self) -> list[tuple[UnitPoint, int]]:
        return [(self.theta, 1), (self.theta.conjugate(), 1)]

    def eigenvalues(self) -> list[tuple[Any, int]]:
        theta = self.theta.radians()
        return [(mp.expj(theta), 1), (mp.expj(-theta), 1)]

    def splitting(self, omega: UnitPoint) -> SplittingPair:
        if same_point(omega, self.theta):
            return SplittingPair(s_plus=0, s_minus=1)

        if same_point(omega, self.theta.conjugate()):
            return SplittingPair(s_plus=1, s_minus=0)

        return ZERO_SPLIT

    def to_json(self) -> dict[str, Any]:
        return {"type": str(self.block_type), "theta": self.theta.to_json()}


# Public Interface
__all__ = ["RBlock"]
