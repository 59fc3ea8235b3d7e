"""Data Class for configuring numerics and jump tuple searches"""

from dataclasses import dataclass


@dataclass
class NumericConfig:
    """Precision and tolerance configuration."""

    precision_bits: int = 256
    tol_symp: float = 1e-10
    ceil_guard: str = "1e-20"
    escalation: int = 4
    oracle_dps: int = 60
    oracle_offsets: tuple[float, float] = (1e-4, 1e-6)


@dataclass
class SearchConfig:
    """Common index jump search configuration.

    - 'eps' of None selects min(0.05, 1 / (1 + 2 * M * sum|chi_hat|)).
    - 'delta' is the fractional part window used to count Delta_k.
    - 'stride' restricts candidates N to multiples of the stride.
    - 'threads' workers run the exact checks of prefiltered candidates.
    """

    eps: float | None = None
    delta: float = 0.25
    n_max: int = 10**7
    want: int = 3
    chunk: int = 2**16
    margin: float = 1e-6
    retry_factor: float = 0.1
    residual_tol: float = 1e-9
    stride: int | None = None
    threads: int = 1
