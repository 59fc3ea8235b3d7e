"""Certificate for odd n: H^e_+ >= (n-1)/2 and H^e_- >= (n-1)/2 give n - 1
non-hyperbolic orbits; one more orbit y with i(y^{2m}) = 2N - n - 1 makes n
orbits whose iterates all have odd Maslov-type indices."""

import logging
from collections.abc import Sequence

from index_jump.base.certificate_report import BoundClaim, ParityCounts
from index_jump.base.certifier import Certifier
from index_jump.base.jump_tuple import JumpTuple
from index_jump.base.morse_ledger import MorseLedger
from index_jump.base.orbit_record import OrbitRecord
from index_jump.iteration import viterbo_at
from index_jump.utils.constants import ParityCase
from index_jump.utils.exceptions import ConsistencyError

logger = logging.getLogger(__name__)


class OddCertifier(Certifier):
    """Counts orbits with i(y^{2m_k}) >= 2N - n + 1 ('+') or <= 2N - n - 3 ('-'),
    closes the Morse chain at P = 2N - n and locates every orbit hitting the
    middle index 2N - n - 1."""

    parity_case = ParityCase.ODD
    maslov_parity = 1
    symbol = "H"

    def thresholds(self, N: int, n: int) -> tuple[int, int]:
        return 2 * N - n + 1, 2 * N - n - 3

    def alternating_top(self, N: int, n: int) -> int:
        return 2 * N - n

    def m_set_ceiling(self, n: int) -> int:
        return -n - 3

    def bound_claims(self, n: int, counts: ParityCounts) -> list[BoundClaim]:
        half = (n - 1) // 2
        witnesses = self.non_hyperbolic_witnesses(counts)

        return [
            BoundClaim(
                claim="H^e_+ >= (n-1)/2",
                required=half,
                observed=counts.plus_even,
                witnesses=counts.members["plus_even"],
            ),
            BoundClaim(
                claim="H^e_- >= (n-1)/2",
                required=half,
                observed=counts.minus_even,
                witnesses=counts.members["minus_even"],
            ),
            BoundClaim(
                claim="non-hyperbolic orbits with odd Maslov-type indices >= n-1",
                required=n - 1,
                observed=len(witnesses),
                witnesses=witnesses,
            ),
        ]

    def extra_claims(
        self,
        records: Sequence[OrbitRecord],
        n: int,
        t: JumpTuple,
        counts: ParityCounts,
        ledger: MorseLedger,
    ) -> list[BoundClaim]:
        """Middle index claim: M_{2N-n-1} >= b_{2N-n-1} = 1 and every orbit
        outside the H^e sets with i(y^{2m}) = 2N - n - 1 and even difference to
        i(y) is reported as witness."""

        middle = 2 * t.N - n - 1
        counted = self.non_hyperbolic_witnesses(counts)

        self._require(
            "middle_index",
            ledger.morse[middle] >= ledger.betti[middle],
            f"M_{middle} = {ledger.morse[middle]} vs b_{middle} = "
            f"{ledger.betti[middle]}",
        )

        found = [
            r.label
            for r, m_k in zip(records, t.m)
            if r.label not in counted
            and viterbo_at(r, 2 * m_k) == middle
            and (middle - viterbo_at(r, 1)) % 2 == 0
        ]

        if not found:
            raise ConsistencyError(
                f"M_{middle} = {ledger.morse[middle]} but no orbit outside the "
                f"H^e sets has i(y^(2m_k)) = {middle}."
            )

        logger.info("Middle index %d witnessed by %s", middle, found)
        self.fields["middle_witnesses"] = found
        witnesses = counted + found

        return [
            BoundClaim(
                claim="orbits with odd Maslov-type indices >= n",
                required=n,
                observed=len(witnesses),
                witnesses=witnesses,
            )
        ]


# Public Interface
__all__ = ["OddCertifier"]
