"""Pydantic class for a monodromy matrix given as a diamond sum of basic blocks."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from index_jump.base.angle import UnitPoint, same_point
from index_jump.base.normal_form import ZERO_SPLIT, NormalForm, SplittingPair
from index_jump.utils.constants import BlockType


class NormalFormDecomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(description="Half dimension of the symplectic matrix", gt=0)
    blocks: tuple[NormalForm, ...] = Field(
        description="Ordered basic normal form blocks of the diamond sum"
    )

    @model_validator(mode="after")
    def validate_dimension(self) -> "NormalFormDecomposition":
        total = sum(block.dim for block in self.blocks)

        if total != 2 * self.n:
            raise ValueError(
                f"Block dimensions sum to {total}, expected 2n = {2 * self.n}."
            )

        return self

    def circle_spectrum(self) -> list[tuple[UnitPoint, int]]:
        """Unit circle eigenvalues with geometric multiplicities summed over blocks."""

        merged: list[list] = []

        for block in self.blocks:
            for omega, nu in block.circle_spectrum():
                for entry in merged:
                    if same_point(entry[0], omega):
                        entry[1] += nu
                        break
                else:
                    merged.append([omega, nu])

        return [(omega, nu) for omega, nu in merged]

    def splitting_at(self, omega: UnitPoint) -> SplittingPair:
        """Sum of per-block splitting numbers at 'omega'."""

        total = ZERO_SPLIT

        for block in self.blocks:
            total = total + block.splitting(omega)

        return total

    def minus_terms(self) -> list[tuple[UnitPoint, int]]:
        """(omega, S-) over every block for omega != 1 with S- > 0."""

        return [term for block in self.blocks for term in block.minus_terms()]

    def collision_count(self) -> int:
        """C(M) i.e. total S- over unit circle points other than 1."""

        return sum(s_minus for _, s_minus in self.minus_terms())

    def nullity(self, m: int) -> int:
        return sum(block.nullity(m) for block in self.blocks)

    def forced_index(self) -> int | None:
        """Position of the first N1(1, b) block with b != 0, if any."""

        for idx, block in enumerate(self.blocks):
            if block.block_type == BlockType.N1 and block.lam == 1 and block.b != 0:
                return idx

        return None

    def non_forced_blocks(self) -> list[NormalForm]:
        forced = self.forced_index()
        return [block for idx, block in enumerate(self.blocks) if idx != forced]

    def __str__(self) -> str:
        return " <> ".join(str(block) for block in self.blocks)


# Public Interface
__all__ = ["NormalFormDecomposition"]
