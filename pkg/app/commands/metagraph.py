import argparse
import logging
from pathlib import Path
from typing import Iterable, List

from app.commands.common import (
    EXIT_DOMAIN,
    EXIT_OK,
    Subparsers,
    add_common_flags,
    add_input,
    open_output,
    read_degree_sequence,
)
from app.core.metagraph import build_metagraph, component_structure, to_dot
from app.schemas.reports import MetagraphReport

logger = logging.getLogger(__name__)


def add_parser(subparsers: Subparsers) -> None:
    parser = subparsers.add_parser(
        "metagraph",
        help="Enumerate all realizations and analyze the move meta-graph",
    )
    add_input(parser)
    add_common_flags(parser)
    parser.add_argument(
        "--dot",
        type=Path,
        default=None,
        help="Also write the meta-graph in DOT format to PATH",
    )
    parser.add_argument("--cap", type=int, default=None, help="Largest N to enumerate")
    parser.set_defaults(handler=run)


def _numbered(groups: Iterable[Iterable[int]]) -> List[List[int]]:
    return [[i + 1 for i in group] for group in groups]


def run(args: argparse.Namespace) -> int:
    d = read_degree_sequence(args.input)
    m = build_metagraph(d, cap=args.cap, jobs=args.jobs)
    structure = component_structure(m)
    report = MetagraphReport(
        num_realizations=m.order,
        e2_edges=[(i + 1, j + 1) for i, j in sorted(m.e2_edges)],
        e3_edges=[(i + 1, j + 1) for i, j in sorted(m.e3_edges)],
        e2_components=_numbered(structure.e2_components),
        e3_joint_components=_numbered(structure.joint_components),
        anchors_bruteforce=[list(t) for t in structure.anchors_bruteforce],
        anchors_general=structure.anchors_general,
        anchors_degseq=[list(t) for t in structure.anchors_degseq],
        corollary_check="pass" if structure.product_structure_ok else "fail",
        details=structure.details,
    )
    with open_output(args) as out:
        if args.format == "json":
            out.write(report.model_dump_json() + "\n")
        else:
            for key, value in report.model_dump().items():
                out.write(f"{key}: {value}\n")
            for i, g in enumerate(m.realizations, start=1):
                out.write(f"\n# realization {i}\n{g.to_text()}")
    if args.dot is not None:
        args.dot.write_text(to_dot(m), encoding="utf-8")
        logger.info(f"Wrote DOT export to {args.dot}")
    if m.order == 0:
        logger.error("Degree sequence has no realization")
        return EXIT_DOMAIN
    return EXIT_OK
