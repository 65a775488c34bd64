"""``selftest``: the exhaustive desk-scale sweep as a pass/fail gate."""

import argparse

from app.commands.common import (
    EXIT_DOMAIN,
    EXIT_OK,
    Subparsers,
    add_common_flags,
    open_output,
)
from app.core import degseq
from app.core.sweep import desk_sweep


def add_parser(subparsers: Subparsers) -> None:
    parser = subparsers.add_parser(
        "selftest",
        help="Certify detector and meta-graph structure on all small sequences",
    )
    add_common_flags(parser)
    parser.add_argument(
        "--max-n",
        dest="max_n",
        type=int,
        default=4,
        choices=range(1, 5),
        help="Largest exhaustive N",
    )
    parser.add_argument(
        "--with-n5", dest="with_n5", action="store_true", help="Add the N = 5 subset"
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    # looked up at call time so a patched detector reaches the sweep
    report = desk_sweep(
        max_n=args.max_n, include_n5=args.with_n5, detector=degseq.detect_anchors
    )
    with open_output(args) as out:
        if args.format == "json":
            out.write(report.model_dump_json() + "\n")
        else:
            out.write(
                f"sequences: {report.sequences} "
                f"({report.canonical_forms} canonical forms)\n"
            )
            for prop in report.properties:
                status = "PASS" if prop.passed else "FAIL"
                out.write(
                    f"{status} {prop.name}: {prop.checked} checked, "
                    f"{prop.failed} failed\n"
                )
                for failure in prop.failures:
                    out.write(f"    {failure}\n")
    return EXIT_OK if report.passed else EXIT_DOMAIN
