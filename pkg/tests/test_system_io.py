"""Test system file parsing, canonical emission and report serialization."""

import json
from fractions import Fraction

import pytest

from index_jump.iteration import index_table
from index_jump.jump import scan_tuples
from index_jump.system_io import (
    dumps,
    emit_report,
    emit_system,
    load_system,
    make_block,
    normalize,
    parse_system,
)
from index_jump.utils.exceptions import DimensionError, SchemaError
from tests.utils.test_utils import d, n1

N1_SPEC = {"type": "N1", "lambda": 1, "b": "1"}


def system_text(n: int, *orbits: dict) -> str:
    return json.dumps({"schema": "mik/1", "n": n, "orbits": list(orbits)})


def test_parse_system(system_file, ellipsoids):
    """Check if emitted ellipsoid systems parse back to the same records."""

    records, n = parse_system(system_file.read_text(encoding="utf-8"))

    assert n == 2
    assert [record.label for record in records] == ["y1", "y2"]
    assert [(r.i1, str(r.decomposition), r.metadata) for r in records] == [
        (r.i1, str(r.decomposition), r.metadata) for r in ellipsoids[2]
    ]


def test_normalize_stable(system_file):
    text = system_file.read_text(encoding="utf-8")

    assert normalize(text) == text
    assert text.endswith("}\n")


def test_load_system_defaults():
    """Check if labels default to y1, y2, ... and provenance to ''."""

    orbits = [{"i1": 1, "blocks": [N1_SPEC]}, {"i1": 3, "blocks": [N1_SPEC]}]
    text = json.dumps({"n": 1, "orbits": orbits})
    records, n, provenance = load_system(text)

    assert (n, provenance) == (1, "")
    assert [(r.label, r.i1) for r in records] == [("y1", 1), ("y2", 3)]


@pytest.mark.parametrize(
    "text, exc_msg",
    [
        ("{", "line 1, column 2: invalid JSON: "),
        ("[]", "system file must be a JSON object."),
        (
            '{"schema": "mik/2", "n": 1, "orbits": []}',
            "schema: unsupported schema 'mik/2' (use 'mik/1').",
        ),
        ('{"n": "2", "orbits": []}', "n: 'n' must be an integer."),
        ('{"n": 0, "orbits": []}', "n: 'n' must be positive."),
        ('{"n": 1, "orbits": []}', "orbits: expected a non-empty list of orbits."),
        (
            system_text(1, {"blocks": [N1_SPEC]}),
            "orbits[0].i1: 'i1' must be an integer.",
        ),
        (
            system_text(1, {"i1": 1, "blocks": []}),
            "orbits[0].blocks: expected a non-empty list of blocks.",
        ),
        (
            system_text(1, {"i1": 1, "blocks": [{"type": "X"}]}),
            "orbits[0].blocks[0].type: unknown block type 'X' (use N1, D, R or N2).",
        ),
        (
            system_text(2, {"i1": 1, "blocks": [N1_SPEC, {"type": "D", "lambda": 1}]}),
            "orbits[0].blocks[1].lambda: D block requires |lambda| not in {0, 1}.",
        ),
        (
            system_text(
                3,
                {
                    "i1": 1,
                    "blocks": [
                        N1_SPEC,
                        {
                            "type": "N2",
                            "theta": "rational_pi:1/2",
                            "B": ["1", "1", "1", "-1"],
                        },
                    ],
                },
            ),
            "orbits[0].blocks[1]: N2 block requires b2 != b3.",
        ),
        (
            system_text(2, {"i1": 1, "blocks": [N1_SPEC, {"type": "R", "theta": "2"}]}),
            "orbits[0].blocks[1].theta: '2' is not a unit circle point",
        ),
        (
            system_text(
                1,
                {"label": "y1", "i1": 1, "blocks": [N1_SPEC]},
                {"label": "y1", "i1": 3, "blocks": [N1_SPEC]},
            ),
            "orbits[1].label: duplicate label 'y1'.",
        ),
    ],
)
def test_load_system_error(text, exc_msg):
    """Check if schema violations name their location."""

    with pytest.raises(SchemaError) as exc_info:
        load_system(text)

    print(f"\n{exc_info.value}\n")
    assert str(exc_info.value).startswith(exc_msg)


def test_load_system_dimension_error():
    with pytest.raises(DimensionError) as exc_info:
        load_system(system_text(2, {"i1": 1, "blocks": [N1_SPEC]}))

    assert str(exc_info.value) == (
        "Orbit 'y1' blocks span dimension 2, expected 2n = 4."
    )


def test_make_block():
    assert make_block({"type": "D", "lambda": "2"}) == d("2")
    assert make_block(N1_SPEC) == n1()

    with pytest.raises(SchemaError) as exc_info:
        make_block(["N1"], "orbits[0].blocks[0]")

    assert str(exc_info.value) == "orbits[0].blocks[0]: block must be a JSON object."


def test_emit_system(worked):
    """Check if emitted systems carry block parameters as exact strings."""

    payload = json.loads(emit_system([worked], 2, "worked example"))

    assert payload["provenance"] == "worked example"
    assert payload["orbits"][0]["blocks"] == [
        {"type": "N1", "lambda": 1, "b": "1"},
        {"type": "D", "lambda": "2"},
    ]


def test_dumps():
    assert dumps({"b": Fraction(1, 2), "a": 1}) == '{\n  "a": 1,\n  "b": "1/2"\n}\n'


def test_emit_report_table(worked):
    """Check TSV and JSON renderings of an index table."""

    table = index_table([worked], range(1, 3))

    assert emit_report(table, "tsv") == "label\tm\ti\tnu\ny1\t1\t1\t1\ny1\t2\t3\t1\n"

    payload = json.loads(emit_report(table))
    assert payload["schema"] == "mik/1"
    assert payload["rows"][1] == {"label": "y1", "m": 2, "i": 3, "nu": 1}


def test_emit_report_structured(worked):
    t = scan_tuples([worked], mbar=2, eps=0.05, n_max=10, want=1)[0]

    payload = json.loads(emit_report(t))
    assert (payload["schema"], payload["N"], payload["m"]) == ("mik/1", 4, [2])

    lines = emit_report({"N": 4, "passed": True}, "tsv").splitlines()
    assert lines == ["schema\tN\tpassed", "mik/1\t4\tTrue"]
