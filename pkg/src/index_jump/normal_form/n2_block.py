"""Implementation of N2Block class

- Concrete implementation of 'NormalForm' abstract class
- Non-semisimple 4x4 block N2(e^{i*theta}, B) = [[R(theta), B], [0, R(theta)]]
with double eigenvalues e^{i*theta}, e^{-i*theta} and b2 != b3.
"""

from decimal import Decimal
from typing import Any, ClassVar

from mpmath import mp, mpf
from pydantic import Field, field_validator, model_validator

from index_jump.base.angle import Angle, UnitPoint, same_point
from index_jump.base.data_class import NumericConfig
from index_jump.base.normal_form import ZERO_SPLIT, NormalForm, SplittingPair
from index_jump.utils.constants import BlockType
from index_jump.utils.exact_utils import working_precision


class N2Block(NormalForm):
    """Jordan block pair on the unit circle.

    - Coordinates are (x1, x2, y1, y2) with J = [[0, -I], [I, 0]], so the block
    is symplectic iff R(theta)^T B is symmetric.
    - Trivial iff (b2 - b3) * sin(theta) > 0: the eigenvalues leave the unit circle
    under a small perturbation and S+ = S- = 0. Non-trivial blocks have
    S+ = S- = 1 at both e^{i*theta} and e^{-i*theta}.
    """

    block_type: ClassVar[BlockType] = BlockType.N2
    dim: ClassVar[int] = 4

    theta: Angle = Field(description="Rotation angle in (0, pi) or (pi, 2*pi)")
    B: tuple[Decimal, Decimal, Decimal, Decimal] = Field(
        description="Entries b1, b2, b3, b4 of the upper right 2x2 block"
    )
    declared_trivial: bool | None = Field(
        description="Optional 'trivial' flag supplied by input file",
        default=None,
        alias="trivial",
        exclude=True,
    )

    @field_validator("theta")
    @classmethod
    def validate_theta(cls, theta: Angle) -> Angle:
        if theta.is_pi:
            raise ValueError("N2 block requires theta != pi.")

        return theta

    @model_validator(mode="after")
    def validate_b(self) -> "N2Block":
        b1, b2, b3, b4 = self.B

        if b2 == b3:
            raise ValueError("N2 block requires b2 != b3.")

        with working_precision():
            theta = self.theta.radians()
            residual = mpf(str(b2 - b3)) * mp.cos(theta) + mpf(
                str(b1 + b4)
            ) * mp.sin(theta)
            scale = max(1, *(abs(b) for b in self.B))

            if abs(residual) > NumericConfig.tol_symp * float(scale):
                raise ValueError(
                    "N2 block requires R(theta)^T B symmetric, i.e. "
                    "(b2 - b3)*cos(theta) = -(b1 + b4)*sin(theta)."
                )

        if self.declared_trivial is not None and self.declared_trivial != self.trivial:
            raise ValueError(
                "Declared 'trivial' flag contradicts (b2 - b3)*sin(theta) > 0."
            )

        return self

    @property
    def trivial(self) -> bool:
        _, b2, b3, _ = self.B

        with working_precision():
            upper_half = self.theta.over_pi() < 1

        return (b2 > b3) == upper_half

    def matrix(self) -> mp.matrix:
        theta = self.theta.radians()
        cos, sin = mp.cos(theta), mp.sin(theta)
        b1, b2, b3, b4 = (mpf(str(b)) for b in self.B)

        return mp.matrix(
            [
                [cos, -sin, b1, b2],
                [sin, cos, b3, b4],
                [0, 0, cos, -sin],
                [0, 0, sin, cos],
            ]
        )

    def circle_spectrum(self) -> list[tuple[UnitPoint, int]]:
        return [(self.theta, 1), (self.theta.conjugate(), 1)]

    def eigenvalues(self) -> list[tuple[Any, int]]:
        theta = self.theta.radians()
        return [(mp.expj(theta), 2), (mp.expj(-theta), 2)]

    def splitting(self, omega: UnitPoint) -> SplittingPair:
        on_spectrum = same_point(omega, self.theta) or same_point(
            omega, self.theta.conjugate()
        )

        if not on_spectrum or self.trivial:
            return ZERO_SPLIT

        return SplittingPair(s_plus=1, s_minus=1)

    def to_json(self) -> dict[str, Any]:
        return {
            "type": str(self.block_type),
            "theta": self.theta.to_json(),
            "B": [str(b) for b in self.B],
            "trivial": self.trivial,
        }


# Public Interface
__all__ = ["N2Block"]
