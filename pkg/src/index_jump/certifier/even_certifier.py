"""Certificate for even n: N^e_+ >= n/2 and N^e_- >= n/2, hence at least n
non-hyperbolic orbits whose iterates all have even Maslov-type indices."""

from index_jump.base.certificate_report import BoundClaim, ParityCounts
from index_jump.base.certifier import Certifier
from index_jump.utils.constants import ParityCase


class EvenCertifier(Certifier):
    """Counts orbits with i(y^{2m_k}) >= 2N - n ('+') or <= 2N - n - 2 ('-')
    and closes the Morse chain at P = 2N - n - 1."""

    parity_case = ParityCase.EVEN
    maslov_parity = 0
    symbol = "N"

    def thresholds(self, N: int, n: int) -> tuple[int, int]:
        return 2 * N - n, 2 * N - n - 2

    def alternating_top(self, N: int, n: int) -> int:
        return 2 * N - n - 1

    def m_set_ceiling(self, n: int) -> int:
        return -n - 2

    def bound_claims(self, n: int, counts: ParityCounts) -> list[BoundClaim]:
        half = n // 2
        witnesses = self.non_hyperbolic_witnesses(counts)

        return [
            BoundClaim(
                claim="N^e_+ >= n/2",
                required=half,
                observed=counts.plus_even,
                witnesses=counts.members["plus_even"],
            ),
            BoundClaim(
                claim="N^e_- >= n/2",
                required=half,
                observed=counts.minus_even,
                witnesses=counts.members["minus_even"],
            ),
            BoundClaim(
                claim="non-hyperbolic orbits with even Maslov-type indices >= n",
                required=n,
                observed=len(witnesses),
                witnesses=witnesses,
            ),
        ]


# Public Interface
__all__ = ["EvenCertifier"]
