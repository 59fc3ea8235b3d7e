"""Abstract class for basic symplectic normal form blocks.

- Concrete blocks (N1, D, R, N2) live in the 'normal_form' sub-package.
- Blocks are immutable pydantic objects; their invariants are enforced at
construction so that every matrix they produce is symplectic.
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, ClassVar

from mpmath import mp
from pydantic import BaseModel, ConfigDict, Field

from index_jump.base.angle import Angle, UnitPoint
from index_jump.utils.constants import BlockType, SplitSource


class SplittingPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    s_plus: int = Field(description="Splitting number S+ at omega", ge=0)
    s_minus: int = Field(description="Splitting number S- at omega", ge=0)
    source: SplitSource = Field(
        description="Either built-in 'table' or numerical 'oracle'",
        default=SplitSource.TABLE,
    )

    def __add__(self, other: "SplittingPair") -> "SplittingPair":
        return SplittingPair(
            s_plus=self.s_plus + other.s_plus,
            s_minus=self.s_minus + other.s_minus,
            source=self.source,
        )

    def as_tuple(self) -> tuple[int, int]:
        return self.s_plus, self.s_minus

    def to_json(self) -> dict[str, int | str]:
        return {
            "s_plus": self.s_plus,
            "s_minus": self.s_minus,
            "source": str(self.source),
        }


ZERO_SPLIT = SplittingPair(s_plus=0, s_minus=0)


class NormalForm(BaseModel, ABC):
    """Abstract class for a basic normal form block of Sp(2) or Sp(4).

    Class Attributes:
        block_type (BlockType):
            Either 'N1', 'D', 'R' or 'N2'.
        dim (int):
            Matrix dimension i.e. 2 except for 'N2' blocks (4).
        on_circle (bool):
            Whether every eigenvalue lies on the unit circle.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    block_type: ClassVar[BlockType]
    dim: ClassVar[int] = 2
    on_circle: ClassVar[bool] = True

    @abstractmethod
    def matrix(self) -> mp.matrix:
        """Literal block matrix at the current mpmath precision.

        Returns:
            (mp.matrix): 'dim' x 'dim' symplectic matrix.
        """

        ...

    @abstractmethod
    def circle_spectrum(self) -> list[tuple[UnitPoint, int]]:
        """Unit circle eigenvalues with geometric multiplicity dim ker(M - wI).

        Returns:
            (list[tuple[UnitPoint, int]]): List of (omega, nu_omega) pairs.
        """

        ...

    @abstractmethod
    def eigenvalues(self) -> list[tuple[Any, int]]:
        """All eigenvalues (complex 'mpc' or real 'mpf') with algebraic
        multiplicity; multiplicities sum to 'dim'."""

        ...

    @abstractmethod
    def splitting(self, omega: UnitPoint) -> SplittingPair:
        """Splitting numbers of the block at 'omega' from the built-in table.

        Args:
            omega (UnitPoint):
                Unit circle point i.e. 1, -1 or an 'Angle'.

        Returns:
            (SplittingPair): (0, 0) if 'omega' is not an eigenvalue.
        """

        ...

    @abstractmethod
    def to_json(self) -> dict[str, Any]:
        """JSON mapping following the system file block schema."""

        ...

    def nullity(self, m: int) -> int:
        """Total nu_omega over unit circle eigenvalues omega with omega^m = 1."""

        total = 0

        for omega, nu in self.circle_spectrum():
            if omega == 1:
                total += nu
            elif omega == -1:
                total += nu if m % 2 == 0 else 0
            elif omega.is_rational:
                # omega^m = 1 iff m * theta / (2 * pi) is an integer
                turns = m * Fraction(omega.num, 2 * omega.den)
                total += nu if turns.denominator == 1 else 0

        return total

    def minus_terms(self) -> list[tuple[Angle | int, int]]:
        """(omega, S-) pairs for unit circle eigenvalues omega != 1 with S- > 0."""

        terms = []

        for omega, _ in self.circle_spectrum():
            if omega == 1:
                continue

            s_minus = self.splitting(omega).s_minus

            if s_minus > 0:
                terms.append((omega, s_minus))

        return terms

    def has_other_root_of_unity(self) -> bool:
        """Whether block has a root of unity eigenvalue other than 1."""

        return any(
            omega == -1 or (isinstance(omega, Angle) and omega.is_rational)
            for omega, _ in self.circle_spectrum()
        )

    def __str__(self) -> str:
        params = ", ".join(
            str(v) for k, v in self.to_json().items() if k not in {"type", "trivial"}
        )
        return f"{self.block_type}({params})"


# Public Interface
__all__ = ["SplittingPair", "ZERO_SPLIT", "NormalForm"]
