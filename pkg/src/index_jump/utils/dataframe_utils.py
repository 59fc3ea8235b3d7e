"""Utility functions to handle all DataFrame related operations."""

from fractions import Fraction
from typing import Any

import pandas as pd
from mpmath import mpf

from index_jump.utils.exact_utils import format_real


def rows_to_frame(rows: list[dict[str, Any]], columns: list[str]) -> pd.DataFrame:
    """Convert list of row mappings to DataFrame with fixed column order."""

    return pd.DataFrame(rows, columns=columns)


def set_str_type(data: pd.DataFrame, digits: int = 30) -> pd.DataFrame:
    """Ensure exact ('Fraction') and high precision ('mpf') values are rendered as
    strings so that no precision is lost to binary floats.

    Args:
        data (pd.DataFrame): DataFrame possibly containing Fraction or mpf values.
        digits (int): Significant digits for 'mpf' values (Default: 30).

    Returns:
        df (pd.DataFrame): Copy with Fraction and mpf values as strings.
    """

    df = data.copy()

    for col in df.columns:
        df[col] = df[col].map(
            lambda v: format_real(v, digits) if isinstance(v, (Fraction, mpf)) else v
        )

    return df


def frame_to_tsv(data: pd.DataFrame) -> str:
    """Deterministic TSV text (no index, '\\n' line endings)."""

    df = set_str_type(data)

    return df.to_csv(sep="\t", index=False, lineterminator="\n")


# Public Interface
__all__ = ["rows_to_frame", "set_str_type", "frame_to_tsv"]
