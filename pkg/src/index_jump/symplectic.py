"""Concrete symplectic matrices built from normal form decompositions.

- 'block_matrix' and 'diamond_sum' produce high precision 'mp.matrix' objects.
- The diamond sum interleaves quadrants, i.e. for A = [[A1, B1], [C1, D1]] and
B = [[A2, B2], [C2, D2]]:

    A <> B = [[A1, 0, B1, 0], [0, A2, 0, B2], [C1, 0, D1, 0], [0, C2, 0, D2]]
"""

import logging
from functools import reduce
from typing import Any

import numpy as np
from mpmath import mp, mpf
from pydantic import BaseModel, Field

from index_jump.base.angle import Angle, UnitPoint
from index_jump.base.data_class import NumericConfig
from index_jump.base.decomposition import NormalFormDecomposition
from index_jump.base.normal_form import NormalForm
from index_jump.utils.constants import BlockType
from index_jump.utils.exact_utils import working_precision
from index_jump.utils.exceptions import DimensionError

logger = logging.getLogger(__name__)


class MonodromyShape(BaseModel):
    """Block census of a closed characteristic monodromy matrix.

    The expected shape is N1(1, b>0) <> U where U consists of r rotations with
    irrational angles, s hyperbolic blocks, r_star non-trivial and r_zero trivial
    N2 blocks with irrational angles, and r + s + 2*r_star + 2*r_zero = n - 1.
    """

    has_forced: bool = Field(description="Contains N1(1, b) with b > 0")
    r: int = Field(description="Number of R blocks with irrational angle")
    s: int = Field(description="Number of D blocks")
    r_star: int = Field(description="Number of non-trivial N2 blocks")
    r_zero: int = Field(description="Number of trivial N2 blocks")
    others: list[str] = Field(description="Blocks outside the expected shape")
    dimension_ok: bool = Field(description="r + s + 2*r_star + 2*r_zero == n - 1")

    @property
    def matches(self) -> bool:
        return self.has_forced and self.dimension_ok and not self.others


def as_matrix(m: Any) -> mp.matrix:
    """Convert nested lists or numpy arrays to 'mp.matrix'."""

    if isinstance(m, mp.matrix):
        return m

    return mp.matrix(np.asarray(m, dtype=object).tolist())


def standard_j(n: int) -> mp.matrix:
    """J = [[0, -I_n], [I_n, 0]]."""

    j_mat = mp.zeros(2 * n)

    for i in range(n):
        j_mat[i, n + i] = -1
        j_mat[n + i, i] = 1

    return j_mat


def block_matrix(block: NormalForm) -> mp.matrix:
    """Literal matrix of a basic normal form block."""

    with working_precision():
        return block.matrix()


def diamond_sum(a: Any, b: Any) -> mp.matrix:
    """Symplectic direct sum with interleaved quadrant layout.

    Args:
        a (Any): 2p x 2p matrix ('mp.matrix', numpy array or nested lists).
        b (Any): 2q x 2q matrix.

    Returns:
        (mp.matrix): 2(p+q) x 2(p+q) matrix A <> B.
    """

    a, b = as_matrix(a), as_matrix(b)

    for mat in (a, b):
        if mat.rows != mat.cols or mat.rows % 2 != 0:
            raise DimensionError(
                "Diamond sum requires square matrices of even dimension; "
                f"got {mat.rows}x{mat.cols}."
            )

    p, q = a.rows // 2, b.rows // 2
    out = mp.zeros(2 * (p + q))

    # Row/column of 'a' (resp. 'b') inside the interleaved layout
    pos_a = [i if i < p else i + q for i in range(2 * p)]
    pos_b = [p + i if i < q else 2 * p + i for i in range(2 * q)]

    for mat, pos in ((a, pos_a), (b, pos_b)):
        for i, row in enumerate(pos):
            for j, col in enumerate(pos):
                out[row, col] = mat[i, j]

    return out


def decomposition_matrix(d: NormalFormDecomposition) -> mp.matrix:
    """Concrete matrix of the whole diamond sum, in block order."""

    with working_precision():
        return reduce(diamond_sum, (block.matrix() for block in d.blocks))


def spectrum_on_circle(d: NormalFormDecomposition) -> dict[UnitPoint, int]:
    """Map unit circle eigenvalue omega to nu_omega = dim ker(M - omega*I)."""

    return dict(d.circle_spectrum())


def algebraic_spectrum(d: NormalFormDecomposition) -> list[tuple[Any, int]]:
    """All eigenvalues with algebraic multiplicity (on and off the circle)."""

    with working_precision():
        return [pair for block in d.blocks for pair in block.eigenvalues()]


def validate_symplectic(m: Any, tol: float | None = None) -> tuple[bool, mpf]:
    """Check ||M^T J M - J||_inf <= tol.

    Args:
        m (Any): Square matrix of even dimension.
        tol (float | None): Tolerance (Default: NumericConfig.tol_symp).

    Returns:
        (tuple[bool, mpf]): Pass/fail and the max-entry residual.
    """

    tol = NumericConfig.tol_symp if tol is None else tol
    m = as_matrix(m)

    if m.rows != m.cols or m.rows % 2 != 0:
        raise DimensionError(
            f"Symplectic check requires square even dimension; got {m.rows}x{m.cols}."
        )

    with working_precision():
        j_mat = standard_j(m.rows // 2)
        diff = m.T * j_mat * m - j_mat
        residual = max(abs(diff[i, j]) for i in range(m.rows) for j in range(m.cols))

    return bool(residual <= tol), residual


def monodromy_shape(d: NormalFormDecomposition) -> MonodromyShape:
    """Census of blocks against the closed characteristic monodromy shape."""

    forced = d.forced_index()
    counts = {"r": 0, "s": 0, "r_star": 0, "r_zero": 0}
    others = []

    for idx, block in enumerate(d.blocks):
        if idx == forced and block.b > 0:
            continue

        angle: Angle | None = getattr(block, "theta", None)

        if block.block_type == BlockType.D:
            counts["s"] += 1
        elif angle is not None and not angle.is_rational:
            if block.block_type == BlockType.R:
                counts["r"] += 1
            else:
                counts["r_zero" if block.trivial else "r_star"] += 1
        else:
            others.append(str(block))

    dimension = counts["r"] + counts["s"] + 2 * (counts["r_star"] + counts["r_zero"])
    has_forced = forced is not None and d.blocks[forced].b > 0

    if not has_forced or others:
        logger.debug("Decomposition '%s' deviates from the expected shape.", d)

    return MonodromyShape(
        has_forced=has_forced,
        others=others,
        dimension_ok=dimension == d.n - 1,
        **counts,
    )


# Public Interface
__all__ = [
    "MonodromyShape",
    "as_matrix",
    "standard_j",
    "block_matrix",
    "diamond_sum",
    "decomposition_matrix",
    "spectrum_on_circle",
    "algebraic_spectrum",
    "validate_symplectic",
    "monodromy_shape",
]
