import argparse
import logging
import sys
from typing import List, NoReturn, Optional, Union

from pydantic import ValidationError

from app import __version__
from app.commands import anchors, check, metagraph, realize, sample, selftest
from app.commands.common import EXIT_DOMAIN, EXIT_USAGE
from app.config import settings
from app.core.errors import (
    CapExceededError,
    DegreeSequenceError,
    NotDigraphicError,
    ParseError,
    SamplerError,
)

logger = logging.getLogger("app")

COMMANDS = (check, anchors, realize, sample, metagraph, selftest)


class CliParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1"""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="dss",
        description="Uniform sampling of simple digraphs with a given degree sequence",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument(
        "-v", "--verbose", action="store_true", help="Log debug messages"
    )
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log errors only")
    subparsers = parser.add_subparsers(
        dest="command", metavar="command", required=True
    )
    for command in COMMANDS:
        command.add_parser(subparsers)
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level: Union[int, str]
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.ERROR
    else:
        level = settings.log_level
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main function for running the command line"""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(args.verbose, args.quiet)

    try:
        return int(args.handler(args))
    except (ParseError, DegreeSequenceError, ValidationError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE
    except (NotDigraphicError, CapExceededError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_DOMAIN
    except SamplerError as e:
        logger.error(f"{args.command}: {type(e).__name__}: {e}")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
