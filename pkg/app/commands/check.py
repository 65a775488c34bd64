import argparse

from app.commands.common import (
    EXIT_DOMAIN,
    EXIT_OK,
    Subparsers,
    add_common_flags,
    add_input,
    open_output,
    read_degree_sequence,
)
from app.core.degseq import is_digraphic, slack_sequences
from app.schemas.reports import CheckReport


def add_parser(subparsers: Subparsers) -> None:
    parser = subparsers.add_parser(
        "check", help="Test whether a degree sequence is digraphic"
    )
    add_input(parser)
    add_common_flags(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    d = read_degree_sequence(args.input)
    slack = slack_sequences(d)
    sum_out, sum_in = d.arc_counts
    report = CheckReport(
        digraphic=is_digraphic(d),
        n=d.n,
        sum_out=sum_out,
        sum_in=sum_in,
        slack_bar=slack.s_bar.tolist(),
        slack_ubar=slack.s_ubar.tolist(),
    )
    with open_output(args) as out:
        if args.format == "json":
            out.write(report.model_dump_json() + "\n")
        else:
            for key, value in report.model_dump().items():
                if isinstance(value, list):
                    value = " ".join(map(str, value))
                elif isinstance(value, bool):
                    value = str(value).lower()
                out.write(f"{key}: {value}\n")
    return EXIT_OK if report.digraphic else EXIT_DOMAIN
