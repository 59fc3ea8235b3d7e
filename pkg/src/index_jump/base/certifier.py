"""Abstract class for multiplicity certificates.

The pipeline is shared by both parity cases; concrete certifiers in the
'certifier' sub-package only supply thresholds, the truncation index of the
alternating sum, the low-index cut of the iterate sets and the asserted bounds.
"""

import logging
from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import replace
from fractions import Fraction
from typing import Any, ClassVar

from index_jump.base.certificate_report import (
    BoundClaim,
    CertificateReport,
    ParityCounts,
    StageResult,
)
from index_jump.base.data_class import SearchConfig
from index_jump.base.jump_tuple import JumpTuple
from index_jump.base.morse_ledger import MorseLedger
from index_jump.base.orbit_record import OrbitRecord
from index_jump.certificate import classify_orbit, validate_hypotheses
from index_jump.iteration import index_at, mbar, viterbo_at
from index_jump.jump import common_multiple, conjugate_pair, scan_tuples
from index_jump.morse import (
    alternating_sum,
    euler_hat,
    identity_residual,
    index_floor,
    morse_inequality,
    morse_numbers,
)
from index_jump.utils.constants import OrbitClass, ParityCase, Verdict
from index_jump.utils.exact_utils import format_real, to_mpf, working_precision
from index_jump.utils.exceptions import ConsistencyError, DomainError, SearchExhausted

logger = logging.getLogger(__name__)

SET_NAMES = ("plus_even", "plus_odd", "minus_even", "minus_odd")


class StageFailed(Exception):
    """Stops the pipeline with 'verdict'."""

    def __init__(self, verdict: Verdict, reason: str) -> None:
        self.verdict = verdict
        self.reason = reason
        super().__init__(reason)


class Certifier(ABC):
    """Abstract class re-running the multiplicity counting argument on a
    concrete orbit system.

    - Hypotheses, mean index identity and m_bar.
    - Verified jump tuple and its conjugate; jump sum identity (with one eps retry).
    - Window preconditions, low-index iterate sets, parity counts and swap.
    - Alternating sum of Morse-type numbers against the counts and the Morse
    inequality.
    - Asserted bounds and soundness of every non-hyperbolic witness.

    Usage:
        >>> certifier = EvenCertifier(config=SearchConfig(n_max=10**6))
        >>> report = certifier.certify(records, n=2)

    Args:
        config (SearchConfig | None):
            Tuple search configuration (Default: SearchConfig()).
        threads (int):
            Worker threads for the tuple search and the Morse ledger
            (Default: 1, or SearchConfig.threads if larger).

    Class Attributes:
        parity_case (ParityCase):
            Either 'n-even' or 'n-odd'.
        maslov_parity (int):
            Parity (0 or 1) of the Maslov-type indices of every witness.
        symbol (str):
            Name of the parity counts in reports i.e. 'N' or 'H'.

    Attributes:
        fields (dict[str, Any]):
            Report fields collected while the pipeline runs.
        stages (list[StageResult]):
            Outcome of every executed stage.
    """

    parity_case: ClassVar[ParityCase]
    maslov_parity: ClassVar[int]
    symbol: ClassVar[str]

    def __init__(self, config: SearchConfig | None = None, threads: int = 1) -> None:
        config = config or SearchConfig()
        self.config = replace(config, threads=max(config.threads, threads))
        self.threads = self.config.threads
        self.fields: dict[str, Any] = {}
        self.stages: list[StageResult] = []

    @abstractmethod
    def thresholds(self, N: int, n: int) -> tuple[int, int]:
        """(plus, minus): '+' sets need i(y^{2m_k}) >= plus, '-' sets <= minus."""

    @abstractmethod
    def alternating_top(self, N: int, n: int) -> int:
        """Truncation index P of sum_{p <= P} (-1)^p M_p."""

    @abstractmethod
    def m_set_ceiling(self, n: int) -> int:
        """Largest Viterbo index i(y^m), m <= m_bar, entering the iterate sets."""

    @abstractmethod
    def bound_claims(self, n: int, counts: ParityCounts) -> list[BoundClaim]:
        """Lower bounds asserted from the parity counts."""

    def extra_claims(
        self,
        records: Sequence[OrbitRecord],
        n: int,
        t: JumpTuple,
        counts: ParityCounts,
        ledger: MorseLedger,
    ) -> list[BoundClaim]:
        """Additional claims of the parity case (none by default)."""

        return []

    def non_hyperbolic_witnesses(self, counts: ParityCounts) -> list[str]:
        return counts.members["plus_even"] + counts.members["minus_even"]

    def certify(self, records: Sequence[OrbitRecord], n: int) -> CertificateReport:
        """Run every stage and return the report.

        Args:
            records (Sequence[OrbitRecord]): Proposed census of prime orbits.
            n (int): Half dimension matching 'parity_case'.

        Returns:
            (CertificateReport): Report with its verdict; failed checks never raise.
        """

        if ParityCase.of(n) != self.parity_case:
            raise DomainError(
                f"{type(self).__name__} handles {self.parity_case}; got n = {n}."
            )

        records = list(records)
        self.stages = []
        self.fields = {
            "n": n,
            "parity_case": self.parity_case,
            "method": type(self).__name__,
        }

        try:
            self._run_stages(records, n)
        except StageFailed as e:
            return self._finish(e.verdict, e.reason)
        except ConsistencyError as e:
            self._record("consistency", False, str(e))
            return self._finish(Verdict.NON_REALIZABLE, str(e))

        return self._finish(Verdict.CERTIFIED, "All stages passed.")

    def _run_stages(self, records: list[OrbitRecord], n: int) -> None:
        self._check_hypotheses(records, n)
        chi_hat = self._check_residual(records)

        mbar_value = mbar(records, n)
        self.fields["mbar"] = mbar_value
        self._record("mbar", True, f"m_bar = {mbar_value}")

        pair = self._find_pair(records, mbar_value, chi_hat)
        self.fields["tuple_pair"] = list(pair)

        self._check_windows(records, n, pair, mbar_value)
        self._check_m_sets(records, n, pair[0], mbar_value)
        counts = self._check_counts(records, n, pair)
        ledger = self._check_ledger(records, n, pair, counts)

        bounds = self.bound_claims(n, counts[0])
        bounds += self.extra_claims(records, n, pair[0], counts[0], ledger)
        self.fields["bounds"] = bounds
        self._require(
            "bounds",
            all(claim.passed for claim in bounds),
            "; ".join(
                f"{claim.claim}: {claim.observed} vs {claim.required}"
                for claim in bounds
            ),
        )

        self._check_witnesses(records, pair[0], counts[0])

    def _record(self, stage: str, passed: bool, detail: str = "") -> bool:
        self.stages.append(StageResult(stage=stage, passed=passed, detail=detail))
        log = logger.info if passed else logger.warning
        log("Stage '%s' %s: %s", stage, "passed" if passed else "failed", detail)

        return passed

    def _require(
        self,
        stage: str,
        passed: bool,
        detail: str,
        verdict: Verdict = Verdict.NON_REALIZABLE,
    ) -> None:
        if not self._record(stage, passed, detail):
            raise StageFailed(verdict, f"Stage '{stage}' failed: {detail}")

    def _finish(self, verdict: Verdict, reason: str) -> CertificateReport:
        logger.info("Verdict %s (%s)", verdict, reason)

        return CertificateReport(
            **self.fields, stages=self.stages, verdict=verdict, reason=reason
        )

    def _check_hypotheses(self, records: list[OrbitRecord], n: int) -> None:
        hypothesis = validate_hypotheses(records, n)
        self.fields["hypothesis"] = hypothesis
        self.fields["classifications"] = {r.label: classify_orbit(r) for r in records}

        self._require(
            "hypotheses",
            hypothesis.passed,
            "; ".join(
                f"{check.orbit}: {check.check} ({check.detail})"
                for check in hypothesis.failures
            ),
        )

    def _check_residual(self, records: list[OrbitRecord]) -> dict[str, Fraction]:
        chi_hat = {r.label: euler_hat(r) for r in records}
        self.fields["chi_hat"] = {label: str(v) for label, v in chi_hat.items()}

        residual = identity_residual(records)
        self.fields["residual"] = format_real(residual, 30)

        with working_precision():
            small = abs(to_mpf(residual)) <= self.config.residual_tol

        self._require(
            "residual", small, f"sum chi_hat / mean - 1/2 = {format_real(residual, 12)}"
        )

        return chi_hat

    def _auto_eps(
        self, records: list[OrbitRecord], chi_hat: dict[str, Fraction]
    ) -> float:
        if self.config.eps is not None:
            return self.config.eps

        total = sum(abs(value) for value in chi_hat.values())
        M = common_multiple(records)

        return min(0.05, float(1 / (1 + 2 * M * total)))

    def _jump_sum_holds(
        self,
        records: list[OrbitRecord],
        t: JumpTuple,
        chi_hat: dict[str, Fraction],
    ) -> bool:
        total = sum(2 * m_k * chi_hat[r.label] for r, m_k in zip(records, t.m))

        return total == t.N

    def _find_pair(
        self,
        records: list[OrbitRecord],
        mbar_value: int,
        chi_hat: dict[str, Fraction],
    ) -> tuple[JumpTuple, JumpTuple]:
        eps = self._auto_eps(records, chi_hat)

        for attempt in range(2):
            self.fields["eps"] = eps

            try:
                first = scan_tuples(
                    records, mbar_value, eps, self.config.n_max, 1, self.config
                )[0]
                pair = conjugate_pair(
                    records, first, mbar_value, eps, self.config.n_max, self.config
                )
            except SearchExhausted as e:
                self._record("tuples", False, f"{e} near miss: {e.near_miss}")
                raise StageFailed(Verdict.INCONCLUSIVE, str(e)) from e

            self._record("tuples", True, f"N = {pair[0].N}, N' = {pair[1].N}")

            if all(self._jump_sum_holds(records, t, chi_hat) for t in pair):
                self._record("jump_sum", True, f"eps = {eps}")
                return pair

            self._record("jump_sum", False, f"sum 2 m_k chi_hat != N at eps = {eps}")

            if attempt == 0:
                eps *= self.config.retry_factor
                logger.warning("Retrying tuple search with eps = %s", eps)

        raise StageFailed(
            Verdict.NON_REALIZABLE,
            "Jump sum identity fails after tightening eps: sum 2 m_k chi_hat != N.",
        )

    def _check_windows(
        self,
        records: list[OrbitRecord],
        n: int,
        pair: tuple[JumpTuple, JumpTuple],
        mbar_value: int,
    ) -> None:
        failures = []

        for t in pair:
            for r, m_k, delta_k in zip(records, t.m, t.delta):
                if r.c > n - 1 or 2 * delta_k - r.c > n - 1:
                    failures.append(f"{r.label}@N={t.N}: C={r.c}, Delta={delta_k}")

                m = mbar_value + 1

                if 2 * m_k - m >= 1 and viterbo_at(r, 2 * m_k - m) > 2 * t.N - n - 3:
                    failures.append(f"{r.label}@N={t.N}: i(y^(2m_k-{m})) too high")

                if viterbo_at(r, 2 * m_k + m) < 2 * t.N - n + 1:
                    failures.append(f"{r.label}@N={t.N}: i(y^(2m_k+{m})) too low")

        self._require("windows", not failures, "; ".join(failures))

    def _check_m_sets(
        self, records: list[OrbitRecord], n: int, t: JumpTuple, mbar_value: int
    ) -> None:
        ceiling = self.m_set_ceiling(n)
        m_sets, failures = {}, []

        for r, m_k in zip(records, t.m):
            first = viterbo_at(r, 1)
            parity = "even" if first % 2 == 0 else "odd"
            sets = dict.fromkeys(SET_NAMES, 0)

            for m in range(1, mbar_value + 1):
                if viterbo_at(r, m) > ceiling:
                    continue

                if (viterbo_at(r, 2 * m_k + m) - first) % 2 == 0:
                    sets[f"plus_{parity}"] += 1

                if (viterbo_at(r, 2 * m_k - m) - first) % 2 == 0:
                    sets[f"minus_{parity}"] += 1

            m_sets[r.label] = sets

            if sets["plus_even"] != sets["minus_even"] or (
                sets["plus_odd"] != sets["minus_odd"]
            ):
                failures.append(f"{r.label}: {sets}")

        self.fields["m_sets"] = m_sets
        self._require("m_sets", not failures, "; ".join(failures))

    def parity_counts(
        self, records: Sequence[OrbitRecord], n: int, t: JumpTuple
    ) -> ParityCounts:
        """Orbits whose iterate 2m_k lies above (below) the '+' ('-') threshold
        with even index difference to the prime iterate, split by i(y) parity."""

        plus, minus = self.thresholds(t.N, n)
        members = {name: [] for name in SET_NAMES}

        for r, m_k in zip(records, t.m):
            first, centre = viterbo_at(r, 1), viterbo_at(r, 2 * m_k)

            if (centre - first) % 2:
                continue

            parity = "even" if first % 2 == 0 else "odd"

            if centre >= plus:
                members[f"plus_{parity}"].append(r.label)
            elif centre <= minus:
                members[f"minus_{parity}"].append(r.label)

        return ParityCounts(
            N=t.N, plus_threshold=plus, minus_threshold=minus, members=members
        )

    def _check_counts(
        self, records: list[OrbitRecord], n: int, pair: tuple[JumpTuple, JumpTuple]
    ) -> tuple[ParityCounts, ParityCounts]:
        counts, conjugate = (self.parity_counts(records, n, t) for t in pair)
        self.fields["counts"] = counts
        self.fields["conjugate_counts"] = conjugate

        swapped = (
            counts.plus_even == conjugate.minus_even
            and counts.minus_even == conjugate.plus_even
            and counts.plus_odd == conjugate.minus_odd
            and counts.minus_odd == conjugate.plus_odd
        )
        s = self.symbol
        self._require(
            "counts",
            swapped,
            f"{s}^e_+={counts.plus_even}, {s}^e_-={counts.minus_even}, "
            f"{s}'^e_+={conjugate.plus_even}, {s}'^e_-={conjugate.minus_even}",
        )

        return counts, conjugate

    def _check_ledger(
        self,
        records: list[OrbitRecord],
        n: int,
        pair: tuple[JumpTuple, JumpTuple],
        counts: tuple[ParityCounts, ParityCounts],
    ) -> MorseLedger:
        top = max(self.alternating_top(t.N, n) for t in pair)
        ledger = morse_numbers(
            records, (index_floor(records, n), top), n, threads=self.threads
        )
        failures = []

        for t, count in zip(pair, counts):
            P = self.alternating_top(t.N, n)
            total = alternating_sum(ledger, P)
            expected = t.N + count.plus_odd - count.plus_even
            u_value, nonnegative = morse_inequality(ledger, P)

            if t is pair[0]:
                self.fields["alternating_sum"] = total

            if total != expected:
                failures.append(f"N={t.N}: alternating sum {total} != {expected}")

            if not nonnegative:
                failures.append(f"N={t.N}: u_{P} = {u_value} < 0")

        self._require("ledger", not failures, "; ".join(failures))

        return ledger

    def _check_witnesses(
        self, records: list[OrbitRecord], t: JumpTuple, counts: ParityCounts
    ) -> None:
        by_label = {r.label: (r, m_k) for r, m_k in zip(records, t.m)}
        failures = []

        for label in self.non_hyperbolic_witnesses(counts):
            r, m_k = by_label[label]
            parities = {index_at(r, 1) % 2, index_at(r, 2 * m_k) % 2}

            if r.c == 0 or classify_orbit(r) == OrbitClass.HYPERBOLIC:
                failures.append(f"{label}: counted non-hyperbolic but C(M) = 0")

            if parities != {self.maslov_parity}:
                failures.append(f"{label}: Maslov-type index parity {parities}")

        self._require("witnesses", not failures, "; ".join(failures))


# Public Interface
__all__ = ["SET_NAMES", "StageFailed", "Certifier"]
