"""Parse and emit orbit system files and reports.

System file layout ("schema": "mik/1"):

    {
      "schema": "mik/1",
      "n": 2,
      "provenance": "ellipsoid sq-radii=sqrt2,sqrt3",
      "orbits": [
        {
          "label": "y1",
          "i1": 2,
          "blocks": [
            {"type": "N1", "lambda": 1, "b": "1"},
            {"type": "R", "theta": {"kind": "irrational", "value": "4.96..."}}
          ],
          "metadata": {"tau": "8.88..."}
        }
      ]
    }

Every JSON document is written with sorted keys, two space indentation and a
trailing newline so that identical inputs produce identical bytes.
"""

import json
import logging
from decimal import Decimal
from fractions import Fraction
from typing import Any

import pandas as pd
from mpmath import mpf
from pydantic import ValidationError

from index_jump.base.angle import parse_point
from index_jump.base.decomposition import NormalFormDecomposition
from index_jump.base.normal_form import NormalForm
from index_jump.base.orbit_record import OrbitRecord
from index_jump.symplectic import monodromy_shape
from index_jump.utils.constants import SCHEMA_VERSION, BlockType, OutputFormat
from index_jump.utils.dataframe_utils import frame_to_tsv, set_str_type
from index_jump.utils.exact_utils import format_real
from index_jump.utils.exceptions import DimensionError, DomainError, SchemaError
from index_jump.utils.module_utils import build_instance

logger = logging.getLogger(__name__)


def _default(value: Any) -> Any:
    if isinstance(value, (Fraction, mpf)):
        return format_real(value)

    if isinstance(value, Decimal):
        return str(value)

    raise TypeError(f"Object of type {type(value).__name__} is not serializable.")


def dumps(payload: Any) -> str:
    """Deterministic JSON text with trailing newline."""

    return json.dumps(payload, sort_keys=True, indent=2, default=_default) + "\n"


def _first_error(e: ValidationError) -> tuple[str, str]:
    error = e.errors()[0]
    loc = ".".join(str(part) for part in error["loc"])
    msg = str(error["msg"]).removeprefix("Value error, ")

    return loc, msg


def make_block(spec: Any, location: str = "") -> NormalForm:
    """Build a normal form block from its JSON mapping e.g. {"type": "D", ...}."""

    if not isinstance(spec, dict):
        raise SchemaError(location, "block must be a JSON object.")

    block_type = spec.get("type")

    if block_type not in {str(member) for member in BlockType}:
        raise SchemaError(
            f"{location}.type",
            f"unknown block type '{block_type}' (use N1, D, R or N2).",
        )

    params = {key: value for key, value in spec.items() if key != "type"}

    try:
        if isinstance(params.get("theta"), str):
            params["theta"] = parse_point(params["theta"])

        return build_instance(f"{block_type}Block", **params)
    except ValidationError as e:
        loc, msg = _first_error(e)
        raise SchemaError(f"{location}.{loc}" if loc else location, msg) from e
    except DomainError as e:
        raise SchemaError(f"{location}.theta", str(e)) from e


def _require_int(data: dict[str, Any], key: str, location: str) -> int:
    value = data.get(key)

    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{location}{key}", f"'{key}' must be an integer.")

    return value


def _parse_orbit(orbit: Any, idx: int, n: int, labels: set[str]) -> OrbitRecord:
    location = f"orbits[{idx}]"

    if not isinstance(orbit, dict):
        raise SchemaError(location, "orbit must be a JSON object.")

    label = orbit.get("label", f"y{idx + 1}")

    if not isinstance(label, str) or not label:
        raise SchemaError(f"{location}.label", "label must be a non-empty string.")

    if label in labels:
        raise SchemaError(f"{location}.label", f"duplicate label '{label}'.")

    i1 = _require_int(orbit, "i1", f"{location}.")
    raw_blocks = orbit.get("blocks")

    if not isinstance(raw_blocks, list) or not raw_blocks:
        raise SchemaError(f"{location}.blocks", "expected a non-empty list of blocks.")

    blocks = tuple(
        make_block(spec, f"{location}.blocks[{pos}]")
        for pos, spec in enumerate(raw_blocks)
    )
    total = sum(block.dim for block in blocks)

    if total != 2 * n:
        raise DimensionError(
            f"Orbit '{label}' blocks span dimension {total}, expected 2n = {2 * n}."
        )

    metadata = orbit.get("metadata", {})

    if not isinstance(metadata, dict):
        raise SchemaError(f"{location}.metadata", "metadata must be a JSON object.")

    record = OrbitRecord(
        label=label,
        n=n,
        i1=i1,
        decomposition=NormalFormDecomposition(n=n, blocks=blocks),
        metadata={str(key): str(value) for key, value in metadata.items()},
    )

    shape = monodromy_shape(record.decomposition)

    if shape.has_forced and not shape.matches:
        logger.warning(
            "Orbit '%s' deviates from the closed characteristic shape: %s",
            label,
            shape.model_dump(),
        )

    labels.add(label)

    return record


def load_system(text: str) -> tuple[list[OrbitRecord], int, str]:
    """Parse system file text into (records, n, provenance)."""

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(
            f"line {e.lineno}, column {e.colno}", f"invalid JSON: {e.msg}."
        ) from e

    if not isinstance(data, dict):
        raise SchemaError("", "system file must be a JSON object.")

    if data.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise SchemaError(
            "schema", f"unsupported schema '{data['schema']}' (use '{SCHEMA_VERSION}')."
        )

    n = _require_int(data, "n", "")

    if n < 1:
        raise SchemaError("n", "'n' must be positive.")

    orbits = data.get("orbits")

    if not isinstance(orbits, list) or not orbits:
        raise SchemaError("orbits", "expected a non-empty list of orbits.")

    labels: set[str] = set()
    records = [_parse_orbit(orbit, idx, n, labels) for idx, orbit in enumerate(orbits)]

    logger.info("Parsed system with %d orbits (n = %d).", len(records), n)

    return records, n, str(data.get("provenance", ""))


def parse_system(text: str) -> tuple[list[OrbitRecord], int]:
    """Parse system file text.

    Args:
        text (str): UTF-8 JSON text of a system file.

    Returns:
        (tuple[list[OrbitRecord], int]): Orbit records and half dimension n.
    """

    records, n, _ = load_system(text)

    return records, n


def system_payload(
    records: list[OrbitRecord], n: int, provenance: str = ""
) -> dict[str, Any]:
    return {
        "schema": SCHEMA_VERSION,
        "n": n,
        "provenance": provenance,
        "orbits": [
            {
                "label": record.label,
                "i1": record.i1,
                "blocks": [block.to_json() for block in record.decomposition.blocks],
                "metadata": dict(record.metadata),
            }
            for record in records
        ],
    }


def emit_system(records: list[OrbitRecord], n: int, provenance: str = "") -> str:
    return dumps(system_payload(records, n, provenance))


def normalize(text: str) -> str:
    """Canonical text of a system file i.e. emit(parse(text))."""

    records, n, provenance = load_system(text)

    return emit_system(records, n, provenance)


def _frame_payload(df: pd.DataFrame) -> dict[str, Any]:
    data = set_str_type(df).astype(object)
    data = data.where(pd.notna(data), None)

    return {"schema": SCHEMA_VERSION, "rows": data.to_dict(orient="records")}


def emit_report(report: Any, fmt: OutputFormat = "json") -> str:
    """Serialize a table or structured report.

    - DataFrames (index tables, ledgers) -> TSV rows or {"rows": [...]}.
    - Objects with 'to_json' (tuples, ledgers, certificates) and plain mappings
    -> JSON; in TSV a single row with dotted column names.

    Args:
        report (Any): pandas DataFrame, object with 'to_json' or mapping.
        fmt (OutputFormat): Either 'json' (Default) or 'tsv'.

    Returns:
        (str): Deterministic text.
    """

    if isinstance(report, pd.DataFrame):
        return frame_to_tsv(report) if fmt == "tsv" else dumps(_frame_payload(report))

    payload = report.to_json() if hasattr(report, "to_json") else dict(report)
    payload = {"schema": SCHEMA_VERSION, **payload}

    if fmt == "tsv":
        flat = json.loads(json.dumps(payload, default=_default))
        return frame_to_tsv(pd.json_normalize(flat, sep="."))

    return dumps(payload)


# Public Interface
__all__ = [
    "dumps",
    "make_block",
    "load_system",
    "parse_system",
    "system_payload",
    "emit_system",
    "normalize",
    "emit_report",
]
