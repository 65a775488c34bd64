"""Flags, input and output shared by every command."""

import argparse
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, TextIO

from app.core.degseq import DegreeSequence, parse_degree_sequence
from app.schemas.sampler import U64_LIMIT

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2

Subparsers = argparse._SubParsersAction


def seed_value(text: str) -> int:
    value = int(text)
    if not 0 <= value < U64_LIMIT:
        raise argparse.ArgumentTypeError(
            f"seed must be an unsigned 64-bit integer, got {text}"
        )
    return value


def add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("text", "json"), default="json", help="Output format"
    )
    parser.add_argument(
        "--output",
        type=Path,
        default=None,
        help="Write to PATH instead of standard output",
    )
    parser.add_argument(
        "--seed", type=seed_value, default=None, help="Seed for every random draw"
    )
    parser.add_argument(
        "--jobs", type=int, default=1, help="Worker processes for enumeration"
    )


def add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "input",
        help="Degree-sequence file ('out in' per line, or a JSON list); '-' for stdin",
    )


def read_degree_sequence(source: str) -> DegreeSequence:
    if source == "-":
        text = sys.stdin.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    return parse_degree_sequence(text)


@contextmanager
def open_output(args: argparse.Namespace) -> Iterator[TextIO]:
    if args.output is None:
        yield sys.stdout
        return
    with args.output.open("w", encoding="utf-8", newline="\n") as stream:
        yield stream
