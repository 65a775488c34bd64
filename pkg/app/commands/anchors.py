import argparse
import json

from app.commands.common import (
    EXIT_OK,
    Subparsers,
    add_common_flags,
    add_input,
    open_output,
    read_degree_sequence,
)
from app.core.degseq import detect_anchors
from app.schemas.sampler import AnchorRecord


def add_parser(subparsers: Subparsers) -> None:
    parser = subparsers.add_parser(
        "anchors", help="List anchored 3-cycles detected from the degree sequence"
    )
    add_input(parser)
    add_common_flags(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    d = read_degree_sequence(args.input)
    records = [
        AnchorRecord(coordinates=list(t.coordinates), k=t.k, l=t.l)
        for t in detect_anchors(d)
    ]
    with open_output(args) as out:
        if args.format == "json":
            out.write(json.dumps([r.model_dump() for r in records]) + "\n")
        else:
            for r in records:
                coordinates = " ".join(map(str, r.coordinates))
                out.write(f"{coordinates}\tk={r.k}\tl={r.l}\n")
    return EXIT_OK
