"""Splitting numbers of normal form decompositions.

- 'splitting_at' and 'collision_count' read the built-in per-block table and
use additivity under the diamond sum.
- 'oracle_splitting' recomputes the table entry of a single block numerically,
without looking at the table, by sweeping a rotated point w' across w.
"""

import logging

from mpmath import mp, mpf

from index_jump.base.angle import UnitPoint, parse_point, point_over_pi
from index_jump.base.data_class import NumericConfig
from index_jump.base.decomposition import NormalFormDecomposition
from index_jump.base.normal_form import NormalForm, SplittingPair
from index_jump.symplectic import standard_j
from index_jump.utils.constants import SplitSource
from index_jump.utils.exact_utils import to_mpf, working_digits
from index_jump.utils.exceptions import OracleInconclusive

logger = logging.getLogger(__name__)


def splitting_at(d: NormalFormDecomposition, omega: UnitPoint | str) -> SplittingPair:
    """Splitting numbers (S+, S-) of the decomposition at unit circle point 'omega'.

    Args:
        d (NormalFormDecomposition): Diamond sum of basic blocks.
        omega (UnitPoint | str): 1, -1, an 'Angle' or a parsable point string.

    Returns:
        (SplittingPair): Sum of per-block table values; (0, 0) off the spectrum.
    """

    return d.splitting_at(parse_point(omega))


def collision_count(d: NormalFormDecomposition) -> int:
    """C(M) = sum of S-(e^{i*theta}) over 0 < theta < 2*pi."""

    return d.collision_count()


def oracle_splitting(
    block: NormalForm, omega: UnitPoint | str, config: NumericConfig | None = None
) -> SplittingPair:
    """Independent numerical splitting numbers of a single block.

    The path ending at the block matrix M is extended by the short negative
    rotation s -> exp(-s*eps*J) M. Afterwards the eigenvalues near 'omega' are
    simple, and the index jump as w' sweeps from 'omega' to 'omega'*e^{+-i*delta}
    is the Krein signed count of eigenvalues on the corresponding arc:

    - S+ = -(sum of Krein signs on the arc above 'omega'),
    - S- = +(sum of Krein signs on the arc below 'omega').

    The count is repeated for both offsets in 'config.oracle_offsets' and must
    agree.

    Args:
        block (NormalForm): Basic normal form block.
        omega (UnitPoint | str): Unit circle point.
        config (NumericConfig | None): Oracle precision and offsets.

    Returns:
        (SplittingPair): Oracle splitting numbers with source 'oracle'.
    """

    config = config or NumericConfig()
    omega = parse_point(omega)

    counts = [
        _krein_arc_count(block, omega, offset, config.oracle_dps)
        for offset in config.oracle_offsets
    ]

    if len(set(counts)) != 1:
        raise OracleInconclusive(
            f"Oracle for {block} at {omega} is unstable across offsets: {counts}."
        )

    s_plus, s_minus = counts[0]

    if s_plus < 0 or s_minus < 0:
        raise OracleInconclusive(
            f"Oracle for {block} at {omega} produced negative counts {counts[0]}."
        )

    return SplittingPair(s_plus=s_plus, s_minus=s_minus, source=SplitSource.ORACLE)


def _krein_arc_count(
    block: NormalForm, omega: UnitPoint, offset: float, dps: int
) -> tuple[int, int]:
    """Krein signed eigenvalue counts on both arcs of length 'offset' at 'omega'."""

    with working_digits(dps):
        mat = block.matrix()
        size = mat.rows
        j_mat = standard_j(size // 2)
        delta = mpf(offset)

        # Rotation small enough that split eigenvalues stay well inside the arcs
        eps = delta**2 / (100 * (1 + mp.mnorm(mat, 1) ** 2))
        perturbed = (mp.cos(eps) * mp.eye(size) - mp.sin(eps) * j_mat) * mat

        values, vectors = mp.eig(perturbed)
        phi = to_mpf(point_over_pi(omega)) * mp.pi
        circle_tol = mpf(10) ** (-(dps // 2))
        s_plus = s_minus = 0

        for idx, value in enumerate(values):
            if abs(abs(value) - 1) > circle_tol:
                continue

            # Signed angular distance from omega in (-pi, pi]
            gap = mp.arg(value * mp.expj(-phi))

            if abs(abs(gap) - delta) < delta / 100 or abs(gap) < eps / 100:
                raise OracleInconclusive(
                    f"Eigenvalue of perturbed {block} too close to an arc end."
                )

            if abs(gap) >= delta:
                continue

            vec = vectors.column(idx)
            form = (vec.H * j_mat * vec)[0, 0]

            if abs(mp.im(form)) < circle_tol * mp.norm(vec) ** 2:
                raise OracleInconclusive(f"Degenerate Krein form for {block}.")

            krein = 1 if mp.im(form) > 0 else -1

            if gap > 0:
                s_plus -= krein
            else:
                s_minus += krein

    logger.debug(
        "Oracle %s at %s (offset %s): (%d, %d)", block, omega, offset, s_plus, s_minus
    )

    return s_plus, s_minus


# Public Interface
__all__ = ["splitting_at", "collision_count", "oracle_splitting"]
