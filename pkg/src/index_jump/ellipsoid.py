"""Known-answer orbit systems and the linear path index oracle.

A weakly non-resonant ellipsoid sum_j (x_j^2 + y_j^2) / a_j = 1 (a_j = r_j^2)
carries exactly n prime closed characteristics, one per coordinate plane. The
k-th one has period tau_k = 2*pi*a_k, and its linearized flow is the path
t -> exp(t*J*A) with A = diag(1/a, 1/a), which rotates the j-th plane by t/a_j.
Its monodromy is N1(1, 1) <> R(2*pi*{a_k/a_j}) over j != k.

'path_index_oracle' computes Maslov-type indices of such linear paths by
crossing forms, independently of the iteration formula.
"""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any

import numpy as np
from mpmath import mp, mpf

from index_jump.base.angle import Angle
from index_jump.base.decomposition import NormalFormDecomposition
from index_jump.base.ellipsoid_spec import EllipsoidSpec
from index_jump.base.orbit_record import OrbitRecord
from index_jump.normal_form.d_block import DBlock
from index_jump.normal_form.n1_block import N1Block
from index_jump.normal_form.r_block import RBlock
from index_jump.symplectic import as_matrix, standard_j
from index_jump.utils.constants import Real
from index_jump.utils.exact_utils import (
    certified_round,
    decimal_digits,
    decimal_string,
    frac_part,
    to_mpf,
    working_precision,
)
from index_jump.utils.exceptions import (
    ConsistencyError,
    DimensionError,
    DomainError,
    PrecisionError,
)

logger = logging.getLogger(__name__)

# Radicands for default and random squared radii sqrt(p)
PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)

RESONANCE_DEN = 10**6
RESONANCE_TOL = "1e-30"
CROSSING_TOL = "1e-12"


def default_sq_radii(n: int) -> list[str]:
    """Tokens 'sqrt2', 'sqrt3', 'sqrt5', ... for the first n primes."""

    if not 1 <= n <= len(PRIMES):
        raise DomainError(f"n must lie in [1, {len(PRIMES)}]; got {n}.")

    return [f"sqrt{p}" for p in PRIMES[:n]]


def random_sq_radii(n: int, seed: int | None = None) -> list[str]:
    """Tokens sqrt(p) for n distinct primes drawn with 'seed'."""

    if not 1 <= n <= len(PRIMES):
        raise DomainError(f"n must lie in [1, {len(PRIMES)}]; got {n}.")

    rng = np.random.default_rng(seed)
    chosen = sorted(int(p) for p in rng.choice(PRIMES, size=n, replace=False))

    return [f"sqrt{p}" for p in chosen]


def _ratio(spec: EllipsoidSpec, k: int, j: int) -> Real:
    """a_k / a_j for 0-based positions; exact when both radii are rational."""

    a_k, a_j = spec.squared_radii[k].real(), spec.squared_radii[j].real()

    if isinstance(a_k, Fraction) and isinstance(a_j, Fraction):
        return a_k / a_j

    return to_mpf(a_k) / to_mpf(a_j)


def check_non_resonant(spec: EllipsoidSpec) -> None:
    """Reject squared radii whose pairwise ratio is (numerically) rational.

    Declared irrational values are compared against their best rational
    approximation with denominator at most 10^6.
    """

    tol = mpf(RESONANCE_TOL)

    for k in range(spec.n):
        for j in range(k + 1, spec.n):
            with working_precision():
                ratio = _ratio(spec, k, j)

                if isinstance(ratio, Fraction):
                    approx = ratio
                else:
                    approx = Fraction(decimal_string(ratio)).limit_denominator(
                        RESONANCE_DEN
                    )

                    if abs(ratio - to_mpf(approx)) >= tol:
                        continue

            raise DomainError(
                f"Squared radii '{spec.squared_radii[k]}' and "
                f"'{spec.squared_radii[j]}' have rational ratio {approx}; "
                "resonant ellipsoids have degenerate iterates."
            )


def linear_generator(spec: EllipsoidSpec) -> mp.matrix:
    """A = diag(1/a_1, ..., 1/a_n, 1/a_1, ..., 1/a_n) at the current precision."""

    inverse = [1 / to_mpf(radius.real()) for radius in spec.squared_radii]
    return mp.diag(inverse + inverse)


def period(spec: EllipsoidSpec, k: int) -> mpf:
    """tau_k = 2*pi*a_k of the k-th (1-based) orbit."""

    return 2 * mp.pi * to_mpf(spec.squared_radii[k - 1].real())


def closed_form_i1(spec: EllipsoidSpec, k: int) -> int:
    """n + 2 * sum_{j != k} [a_k / a_j] of the k-th (1-based) orbit."""

    total = spec.n

    for j in range(spec.n):
        if j != k - 1:
            total += 2 * certified_round(
                lambda j=j: _ratio(spec, k - 1, j), mode="floor"
            )

    return total


def _plane_cluster(
    values: Any, vectors: mp.matrix, tol: mpf
) -> list[tuple[mpf, list[mp.matrix]]]:
    """Group eigenvectors of purely imaginary eigenvalues i*lam, lam > 0."""

    clusters: list[tuple[mpf, list[mp.matrix]]] = []

    for idx, value in enumerate(values):
        if abs(mp.re(value)) > tol or mp.im(value) <= tol:
            continue

        vec = vectors.column(idx)
        vec = vec / mp.norm(vec)
        lam = mp.im(value)

        for cluster_lam, members in clusters:
            if abs(cluster_lam - lam) <= tol:
                members.append(vec)
                break
        else:
            clusters.append((lam, [vec]))

    return clusters


def _crossing_signature(
    a_mat: mp.matrix, vecs: list[mp.matrix], tol: mpf
) -> tuple[int, int]:
    """Signature and negative count of the crossing form on one eigenspace."""

    size = len(vecs)
    basis = mp.matrix(a_mat.rows, size)

    for col, vec in enumerate(vecs):
        for row in range(a_mat.rows):
            basis[row, col] = vec[row]

    form = basis.H * a_mat * basis
    form = (form + form.H) / 2
    values = mp.eighe(form, eigvals_only=True)
    eigen = [values[idx] for idx in range(values.rows)]

    if any(abs(value) <= tol for value in eigen):
        raise PrecisionError("Degenerate crossing form on the linear path.")

    positive = sum(1 for value in eigen if value > 0)

    return positive - (size - positive), size - positive


def path_index_oracle(generator: Any, t_end: Real | int | str) -> int:
    """Maslov-type index of t -> exp(t*J*A), t in [0, t_end], by crossing forms.

    With Gamma = <A xi, xi> on ker(exp(t*J*A) - I):

    - the start t = 0 contributes sign(A) / 2,
    - each interior crossing t = 2*pi*l / lam (i*lam an eigenvalue of J*A)
    contributes the signature of Gamma,
    - an endpoint crossing contributes minus the negative count of Gamma.

    The real crossing form on the eigenspace pair of +-i*lam is twice the
    Hermitian form V^H A V on the eigenvectors of i*lam.

    Args:
        generator (Any): Symmetric non-degenerate 2n x 2n matrix A.
        t_end (Real | int | str): Positive end time.

    Returns:
        (int): Maslov-type index of the path.
    """

    with working_precision():
        if not isinstance(generator, mp.matrix):
            generator = [
                [to_mpf(value) for value in row]
                for row in np.asarray(generator, dtype=object).tolist()
            ]

        a_mat = as_matrix(generator)
        size = a_mat.rows

        if size != a_mat.cols or size % 2:
            raise DimensionError(
                f"Generator must be 2n x 2n; got {size} x {a_mat.cols}."
            )

        tol = mpf(10) ** (-(decimal_digits() // 3))
        scale = max(1, mp.mnorm(a_mat, 1))

        if mp.mnorm(a_mat - a_mat.T, 1) > tol * scale:
            raise DomainError("Generator A must be symmetric.")

        end = to_mpf(t_end)

        if end <= 0:
            raise DomainError(f"t_end must be positive; got {t_end}.")

        values = mp.eigsy(a_mat, eigvals_only=True)
        signs = [values[idx] for idx in range(values.rows)]

        if any(abs(value) <= tol * scale for value in signs):
            raise DomainError("Generator A must be non-degenerate.")

        positive = sum(1 for value in signs if value > 0)
        index = (2 * positive - size) // 2

        values, vectors = mp.eig(standard_j(size // 2) * a_mat)
        exact_tol = mpf(10) ** (-(decimal_digits() // 2))
        ambiguous_tol = mpf(CROSSING_TOL) * max(1, end)

        for lam, vecs in _plane_cluster(values, vectors, tol * scale):
            signature, negative = _crossing_signature(a_mat, vecs, tol * scale)
            step = 2 * mp.pi / lam
            last = int(mp.floor(end / step + exact_tol))
            gap = abs(last * step - end)

            if last >= 1 and gap <= exact_tol * max(1, end):
                index += 2 * signature * (last - 1) - 2 * negative
                continue

            if min(gap, abs((last + 1) * step - end)) <= ambiguous_tol:
                raise PrecisionError(
                    f"Crossing within {CROSSING_TOL} of t_end = {mp.nstr(end, 20)}."
                )

            index += 2 * signature * last

    return index


def _orbit_record(spec: EllipsoidSpec, k: int, generator: mp.matrix) -> OrbitRecord:
    with working_precision():
        tau = period(spec, k)
        blocks = [N1Block(lam=1, b=1)]

        for j in range(spec.n):
            if j != k - 1:
                ratio = to_mpf(_ratio(spec, k - 1, j))
                theta = Angle.irrational(2 * mp.pi * frac_part(ratio))
                blocks.append(RBlock(theta=theta))

        i1 = path_index_oracle(generator, tau)

    expected = closed_form_i1(spec, k)

    if i1 != expected:
        raise ConsistencyError(
            f"Oracle index {i1} of orbit y{k} differs from closed form {expected}."
        )

    return OrbitRecord(
        label=f"y{k}",
        n=spec.n,
        i1=i1,
        decomposition=NormalFormDecomposition(n=spec.n, blocks=tuple(blocks)),
        metadata={
            "tau": mp.nstr(tau, 30),
            "sq_radius": str(spec.squared_radii[k - 1]),
        },
    )


def ellipsoid_system(spec: EllipsoidSpec, threads: int = 1) -> list[OrbitRecord]:
    """Prime closed characteristics of a weakly non-resonant ellipsoid.

    Args:
        spec (EllipsoidSpec): Squared radii with pairwise irrational ratios.
        threads (int): Worker threads for the per orbit oracle runs.

    Returns:
        (list[OrbitRecord]): n records 'y1', ..., 'yn' with oracle computed i1
            and period 'tau' in metadata.
    """

    check_non_resonant(spec)

    with working_precision():
        generator = linear_generator(spec)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        records = list(
            executor.map(
                lambda k: _orbit_record(spec, k, generator), range(1, spec.n + 1)
            )
        )

    logger.info(
        "Ellipsoid %s: i1 = %s.",
        ",".join(spec.tokens),
        [record.i1 for record in records],
    )

    return records


def planted_hyperbolic(n: int, i1: int = 1, lam: str = "2") -> list[OrbitRecord]:
    """Single orbit N1(1, 1) <> D(lam)^(n-1); a system no hypersurface carries."""

    if n < 2:
        raise DomainError(f"Planted hyperbolic systems need n >= 2; got {n}.")

    blocks = [N1Block(lam=1, b=1)] + [DBlock(lam=lam) for _ in range(n - 1)]

    return [
        OrbitRecord(
            label="h1",
            n=n,
            i1=i1,
            decomposition=NormalFormDecomposition(n=n, blocks=tuple(blocks)),
            metadata={"provenance": "planted hyperbolic"},
        )
    ]


def oracle_indices(
    spec: EllipsoidSpec, k: int, iterates: Sequence[int]
) -> dict[int, int]:
    """Oracle Maslov-type indices of the iterates of the k-th orbit."""

    with working_precision():
        generator = linear_generator(spec)
        tau = period(spec, k)

        return {m: path_index_oracle(generator, m * tau) for m in iterates}


# Public Interface
__all__ = [
    "PRIMES",
    "default_sq_radii",
    "random_sq_radii",
    "check_non_resonant",
    "linear_generator",
    "period",
    "closed_form_i1",
    "path_index_oracle",
    "ellipsoid_system",
    "planted_hyperbolic",
    "oracle_indices",
]
