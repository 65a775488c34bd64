import argparse

from app.commands.common import (
    EXIT_OK,
    Subparsers,
    add_common_flags,
    add_input,
    open_output,
    read_degree_sequence,
)
from app.core.realize import realize


def add_parser(subparsers: Subparsers) -> None:
    parser = subparsers.add_parser(
        "realize", help="Print one realization built by the greedy construction"
    )
    add_input(parser)
    add_common_flags(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    g = realize(read_degree_sequence(args.input))
    with open_output(args) as out:
        out.write(g.to_json() + "\n" if args.format == "json" else g.to_text())
    return EXIT_OK
