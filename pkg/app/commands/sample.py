"""``sample``: stream realizations drawn by one of the two switch chains."""

import argparse
import json
from typing import TextIO

from app.commands.common import (
    EXIT_OK,
    Subparsers,
    add_common_flags,
    add_input,
    open_output,
    read_degree_sequence,
)
from app.core.degseq import detect_anchors
from app.core.mcmc import sample_full, sample_reduced
from app.core.rng import RNG_ALGORITHM, resolve_seed
from app.models.digraph import Digraph
from app.schemas.sampler import AnchorRecord, GraphRecord, SampleHeader, SamplerConfig


def add_parser(subparsers: Subparsers) -> None:
    parser = subparsers.add_parser(
        "sample", help="Sample realizations with a switch Markov chain"
    )
    add_input(parser)
    add_common_flags(parser)
    chain = parser.add_mutually_exclusive_group()
    chain.add_argument(
        "--reduced",
        dest="chain",
        action="store_const",
        const="reduced",
        help="2-switch chain with coin-flipped anchors (default)",
    )
    chain.add_argument(
        "--full",
        dest="chain",
        action="store_const",
        const="full",
        help="2-switch and 3-cycle chain",
    )
    parser.set_defaults(chain="reduced", handler=run)
    parser.add_argument(
        "--p", type=float, default=0.9, help="2-switch probability of the full chain"
    )
    parser.add_argument(
        "--steps", type=int, default=1000, help="Chain steps after burn-in"
    )
    parser.add_argument(
        "--thin",
        type=int,
        default=None,
        help="Emit every THIN-th step (default N^2)",
    )
    parser.add_argument(
        "--burn-in",
        dest="burn_in",
        type=int,
        default=None,
        help="Discarded initial steps (default 10 N^2)",
    )


def _write_header(out: TextIO, header: SampleHeader, as_json: bool) -> None:
    if as_json:
        out.write(header.model_dump_json() + "\n")
        return
    for key, value in header.model_dump().items():
        if key == "anchor_triples":
            value = json.dumps(value)
        out.write(f"# {key}: {value}\n")


def _write_graph(out: TextIO, g: Digraph, as_json: bool) -> None:
    if as_json:
        out.write(GraphRecord(n=g.n, arcs=g.arcs()).model_dump_json() + "\n")
    else:
        out.write("\n" + g.to_text())


def run(args: argparse.Namespace) -> int:
    d = read_degree_sequence(args.input)
    anchors = detect_anchors(d)
    config = SamplerConfig(
        p=args.p,
        steps=args.steps,
        seed=resolve_seed(args.seed),
        thin=args.thin,
        burn_in=args.burn_in,
    )
    resolved = config.resolved(d.n, config.seed)
    full = args.chain == "full"
    header = SampleHeader(
        chain=args.chain,
        seed=resolved.seed,
        # the reduced chain proposes a 2-switch at every step
        p=resolved.p if full else 1.0,
        steps=resolved.steps,
        thin=resolved.thin,
        burn_in=resolved.burn_in,
        rng_algorithm=RNG_ALGORITHM,
        anchor_triples=[
            AnchorRecord(coordinates=list(t.coordinates), k=t.k, l=t.l)
            for t in anchors
        ],
    )
    chain = sample_full(d, config) if full else sample_reduced(d, config)
    as_json = args.format == "json"
    with open_output(args) as out:
        _write_header(out, header, as_json)
        for g in chain:
            _write_graph(out, g, as_json)
    return EXIT_OK
