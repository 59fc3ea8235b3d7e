"""Command line interface 'index-jump'.

Usage examples:

    index-jump ellipsoid --n 3 --sq-radii sqrt2,sqrt3,sqrt5 --emit system.json
    index-jump index --system system.json --m-range 1..5 --grading viterbo
    index-jump jump --system system.json --eps 5e-2 --nmax 1e7 --want 3
    index-jump certify --system system.json

Exit codes of 'certify': 0 CERTIFIED, 1 NON-REALIZABLE, 2 INCONCLUSIVE. 'jump'
exits with 2 when the search is exhausted. Invalid input exits with 3.
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from dataclasses import replace
from typing import Any

import pandas as pd

from index_jump.base.angle import parse_point
from index_jump.base.data_class import NumericConfig, SearchConfig
from index_jump.base.ellipsoid_spec import EllipsoidSpec
from index_jump.base.orbit_record import OrbitRecord
from index_jump.certificate import certify
from index_jump.ellipsoid import (
    default_sq_radii,
    ellipsoid_system,
    random_sq_radii,
)
from index_jump.iteration import index_table, mbar
from index_jump.jump import conjugate_pair, scan_tuples, verify_tuple
from index_jump.morse import euler_hat, ledger_frame, morse_numbers
from index_jump.splitting import oracle_splitting, splitting_at
from index_jump.symplectic import (
    decomposition_matrix,
    monodromy_shape,
    validate_symplectic,
)
from index_jump.system_io import emit_report, emit_system, make_block, parse_system
from index_jump.utils.constants import EXIT_CODES, Grading
from index_jump.utils.exact_utils import (
    configure_numerics,
    format_real,
    working_precision,
)
from index_jump.utils.exceptions import DomainError, IndexJumpError, SearchExhausted
from index_jump.utils.file_utils import load_text, save_text
from index_jump.utils.utils import parse_count, parse_int_range

logger = logging.getLogger(__name__)

EXIT_INPUT_ERROR = 3


def _load(path: str) -> tuple[list[OrbitRecord], int]:
    return parse_system(load_text(path))


def _write(text: str, output: str | None = None) -> None:
    if output:
        save_text(text, output)
        logger.info("Saved output to '%s'.", output)
    else:
        sys.stdout.write(text)


def _eps(text: str) -> float | None:
    return None if text == "auto" else float(text)


def _search_config(args: argparse.Namespace) -> SearchConfig:
    config = SearchConfig()
    overrides: dict[str, Any] = {
        "eps": getattr(args, "eps", None),
        "threads": max(1, args.threads),
    }

    for key in ("n_max", "want", "delta", "stride"):
        value = getattr(args, key, None)

        if value is not None:
            overrides[key] = value

    return replace(config, **overrides)


def run_normal_form(args: argparse.Namespace) -> int:
    records, _ = _load(args.system)
    rows = []

    for record in records:
        with working_precision():
            symplectic, residual = validate_symplectic(
                decomposition_matrix(record.decomposition)
            )

        shape = monodromy_shape(record.decomposition)
        rows.append(
            {
                "label": record.label,
                "decomposition": str(record.decomposition),
                "symplectic": symplectic,
                "residual": format_real(residual, 5),
                "shape_ok": shape.matches,
                "r": shape.r,
                "s": shape.s,
                "r_star": shape.r_star,
                "r_zero": shape.r_zero,
            }
        )

    _write(emit_report(pd.DataFrame(rows), args.format or "tsv"))
    return 0


def run_splitting(args: argparse.Namespace) -> int:
    if args.block:
        block = make_block(json.loads(args.block), "block")
        result = (
            oracle_splitting(block, args.omega)
            if args.oracle
            else block.splitting(parse_point(args.omega))
        )
        _write(emit_report(result, args.format or "json"))
        return 0

    records, _ = _load(args.system)
    rows = []

    for record in records:
        pair = splitting_at(record.decomposition, args.omega)
        rows.append({"label": record.label, **pair.to_json()})

    _write(emit_report(pd.DataFrame(rows), args.format or "tsv"))
    return 0


def run_index(args: argparse.Namespace) -> int:
    records, _ = _load(args.system)
    lo, hi = parse_int_range(args.m_range)
    table = index_table(
        records, range(lo, hi + 1), Grading(args.grading), threads=args.threads
    )

    _write(emit_report(table, args.format or "tsv"))
    return 0


def run_mean(args: argparse.Namespace) -> int:
    records, _ = _load(args.system)
    rows = [
        {
            "label": record.label,
            "i1": record.i1,
            "s_plus": record.s_plus_one,
            "c": record.c,
            "mean": record.mean,
        }
        for record in records
    ]

    _write(emit_report(pd.DataFrame(rows), args.format or "tsv"))
    return 0


def run_jump(args: argparse.Namespace) -> int:
    records, n = _load(args.system)
    config = _search_config(args)
    eps = config.eps if config.eps is not None else 0.05
    m_bar = mbar(records, n)

    try:
        tuples = scan_tuples(records, m_bar, eps, config.n_max, config.want, config)

        if args.conjugate:
            tuples = list(
                conjugate_pair(records, tuples[0], m_bar, eps, config.n_max, config)
            )
    except SearchExhausted as e:
        logger.error("%s", e)
        _write(emit_report({"mbar": m_bar, "eps": eps, "near_miss": e.near_miss}))
        return 2

    payload = {
        "mbar": m_bar,
        "eps": eps,
        "tuples": [
            {
                "tuple": t.to_json(),
                "verification": verify_tuple(
                    records, t, m_bar, config.delta
                ).to_json(),
            }
            for t in tuples
        ],
    }

    _write(emit_report(payload, args.format or "json"))
    return 0


def run_morse(args: argparse.Namespace) -> int:
    records, n = _load(args.system)
    ledger = morse_numbers(
        records, parse_int_range(args.window), n=n, threads=args.threads
    )

    for record in records:
        logger.info("chi_hat(%s) = %s", record.label, euler_hat(record))

    _write(emit_report(ledger_frame(ledger), args.format or "tsv"))
    return 0


def run_certify(args: argparse.Namespace) -> int:
    records, n = _load(args.system)
    report = certify(records, n, _search_config(args), threads=args.threads)

    logger.info("Verdict: %s (%s)", report.verdict, report.reason)
    _write(emit_report(report, args.format or "json"), args.output)

    return EXIT_CODES[str(report.verdict)]


def run_ellipsoid(args: argparse.Namespace) -> int:
    if args.sq_radii:
        tokens = [token for token in args.sq_radii.split(",") if token]
    elif args.seed is not None:
        tokens = random_sq_radii(args.n, args.seed)
    else:
        tokens = default_sq_radii(args.n)

    spec = EllipsoidSpec.from_tokens(tokens)

    if spec.n != args.n:
        raise DomainError(f"--n {args.n} but {spec.n} squared radii given.")

    records = ellipsoid_system(spec, threads=args.threads)
    provenance = f"ellipsoid sq-radii={','.join(spec.tokens)}"

    _write(emit_system(records, spec.n, provenance), args.emit)
    return 0


def _add_system(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--system", required=True, help="System JSON file.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="index-jump",
        description="Index theory of closed characteristics on concrete orbit systems.",
    )
    parser.add_argument("--format", choices=["json", "tsv"], default=None)
    parser.add_argument("--precision", type=int, default=256, help="Bits (>= 128).")
    parser.add_argument("--seed", type=int, default=None, help="Random radii seed.")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("-v", "--verbose", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True)

    normal_form = sub.add_parser("normal-form", help="Check decompositions.")
    _add_system(normal_form)
    normal_form.set_defaults(func=run_normal_form)

    splitting = sub.add_parser("splitting", help="Splitting numbers at omega.")
    source = splitting.add_mutually_exclusive_group(required=True)
    source.add_argument("--block", help="Block JSON e.g. '{\"type\": \"D\", ...}'.")
    source.add_argument("--system", help="System JSON file.")
    splitting.add_argument("--omega", required=True, help="1, -1 or an angle.")
    splitting.add_argument("--oracle", action="store_true", help="Use the oracle.")
    splitting.set_defaults(func=run_splitting)

    index = sub.add_parser("index", help="Iterate index table.")
    _add_system(index)
    index.add_argument("--m-range", default="1..10", help="Iterates 'lo..hi'.")
    index.add_argument(
        "--grading", choices=[str(g) for g in Grading], default="maslov"
    )
    index.set_defaults(func=run_index)

    mean = sub.add_parser("mean", help="Mean indices.")
    _add_system(mean)
    mean.set_defaults(func=run_mean)

    jump = sub.add_parser("jump", help="Common index jump tuples.")
    _add_system(jump)
    jump.add_argument("--eps", type=float, default=None)
    jump.add_argument("--nmax", dest="n_max", type=parse_count, default=None)
    jump.add_argument("--want", type=int, default=None)
    jump.add_argument("--delta", type=float, default=None)
    jump.add_argument("--stride", type=int, default=None)
    jump.add_argument("--conjugate", action="store_true")
    jump.set_defaults(func=run_jump)

    morse = sub.add_parser("morse", help="Morse ledger.")
    _add_system(morse)
    morse.add_argument("--window", default="-10..200", help="Window 'lo..hi'.")
    morse.set_defaults(func=run_morse)

    cert = sub.add_parser("certify", help="Multiplicity certificate.")
    _add_system(cert)
    cert.add_argument("--nmax", dest="n_max", type=parse_count, default=None)
    cert.add_argument("--eps", type=_eps, default=None, help="Float or 'auto'.")
    cert.add_argument("--delta", type=float, default=None)
    cert.add_argument("--output", default=None, help="Report file path.")
    cert.set_defaults(func=run_certify)

    ellipsoid = sub.add_parser("ellipsoid", help="Ellipsoid orbit system.")
    ellipsoid.add_argument("--n", type=int, required=True)
    ellipsoid.add_argument("--sq-radii", default=None, help="e.g. sqrt2,sqrt3.")
    ellipsoid.add_argument("--emit", default=None, help="System file path.")
    ellipsoid.set_defaults(func=run_ellipsoid)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        configure_numerics(NumericConfig(precision_bits=args.precision))
        return args.func(args)
    except (IndexJumpError, ValueError, FileNotFoundError) as e:
        logger.error("%s", e)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
