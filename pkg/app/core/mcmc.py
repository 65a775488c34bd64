"""The two switch chains over realizations of a degree sequence.

``sample_full`` walks with 2-switches and directed 3-cycle reorientations.
``sample_reduced`` fixes the orientation of every anchored 3-cycle by a fair
coin and then walks with 2-switches only.

A 2-switch draws an ordered 4-tuple (a, b, c, d) uniformly and attempts
exactly {(a, b), (c, d)} -> {(a, d), (c, b)}. Every such move is undone by the
tuple (a, d, c, b), which is drawn with the same probability, so the kernel
is symmetric and the stationary distribution is uniform.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Tuple

from app.core.degseq import DegreeSequence, detect_anchors
from app.core.errors import (
    AnchorAssertionError,
    ChainInvariantError,
    InvalidVertexError,
)
from app.core.realize import realize
from app.core.rng import ChainRandom, resolve_seed
from app.models.digraph import Arc, Digraph, degree_sequence_of, is_induced_c3
from app.schemas.sampler import SamplerConfig

logger = logging.getLogger(__name__)


class MoveKind(str, Enum):
    TWO_SWITCH = "TwoSwitchApplied"
    C3 = "C3Applied"
    NOOP = "NoOp"


@dataclass(frozen=True)
class MoveOutcome:
    kind: MoveKind
    vertices: Tuple[int, ...] = ()
    removed: Tuple[Arc, ...] = ()
    added: Tuple[Arc, ...] = ()

    @property
    def applied(self) -> bool:
        return self.kind is not MoveKind.NOOP

    def reverse_tuple(self) -> Tuple[int, ...]:
        """Vertex tuple whose move undoes this one"""
        if self.kind is MoveKind.TWO_SWITCH:
            a, b, c, d = self.vertices
            return a, d, c, b
        return self.vertices


Step = Callable[[Digraph, ChainRandom], MoveOutcome]


def _require_distinct(g: Digraph, vertices: Tuple[int, ...]) -> None:
    if len(set(vertices)) != len(vertices):
        raise InvalidVertexError(f"Vertices {vertices} are not pairwise distinct")
    for v in vertices:
        if not 1 <= v <= g.n:
            raise InvalidVertexError(f"Vertex {v} is out of range 1..{g.n}")


def try_two_switch(g: Digraph, a: int, b: int, c: int, d: int) -> MoveOutcome:
    vertices = (a, b, c, d)
    _require_distinct(g, vertices)
    present = g.has_arc(a, b) and g.has_arc(c, d)
    if present and not g.has_arc(a, d) and not g.has_arc(c, b):
        removed = ((a, b), (c, d))
        added = ((a, d), (c, b))
        g.replace_arcs(removed, added)
        return MoveOutcome(MoveKind.TWO_SWITCH, vertices, removed, added)
    return MoveOutcome(MoveKind.NOOP, vertices)


def try_c3_reorient(g: Digraph, triple: Iterable[int]) -> MoveOutcome:
    vertices = tuple(triple)
    _require_distinct(g, vertices)
    orientation = is_induced_c3(g, vertices)
    if orientation is None:
        return MoveOutcome(MoveKind.NOOP, vertices)
    a, b, c = orientation
    removed = ((a, b), (b, c), (c, a))
    added = ((b, a), (c, b), (a, c))
    g.replace_arcs(removed, added)
    return MoveOutcome(MoveKind.C3, vertices, removed, added)


def step_full(g: Digraph, config: SamplerConfig, rng: ChainRandom) -> MoveOutcome:
    """One step of the full chain; draws that cannot fit in the graph are NoOps"""
    n = g.n
    if rng.coin(config.p):
        if n < 4:
            return MoveOutcome(MoveKind.NOOP)
        a, b, c, d = rng.distinct(n, 4)
        return try_two_switch(g, a, b, c, d)
    if n < 3:
        return MoveOutcome(MoveKind.NOOP)
    return try_c3_reorient(g, rng.distinct(n, 3))


def step_switch(g: Digraph, rng: ChainRandom) -> MoveOutcome:
    if g.n < 4:
        return MoveOutcome(MoveKind.NOOP)
    a, b, c, d = rng.distinct(g.n, 4)
    return try_two_switch(g, a, b, c, d)


def check_state(g: Digraph, d: DegreeSequence) -> None:
    if not g.is_consistent():
        raise ChainInvariantError("Chain state lost simplicity or degree bookkeeping")
    if degree_sequence_of(g) != d:
        raise ChainInvariantError(
            "Chain state drifted away from the input degree sequence"
        )


def _emit(
    g: Digraph,
    d: DegreeSequence,
    config: SamplerConfig,
    rng: ChainRandom,
    step: Step,
) -> Iterator[Digraph]:
    for _ in range(config.burn_in or 0):
        step(g, rng)
    thin = config.thin or 1
    emitted = 0
    for i in range(1, config.steps + 1):
        step(g, rng)
        if i % thin:
            continue
        if emitted % config.check_every == 0:
            check_state(g, d)
        emitted += 1
        yield g.copy()
    logger.debug(f"Chain finished after {config.steps} steps, {emitted} emissions")


def _prepare(
    d: DegreeSequence, config: SamplerConfig
) -> Tuple[SamplerConfig, ChainRandom]:
    seed = resolve_seed(config.seed)
    if config.seed is None:
        logger.info(f"No seed given, using generated seed {seed}")
    resolved = config.resolved(d.n, seed)
    logger.debug(
        f"Chain settings: burn_in={resolved.burn_in}, thin={resolved.thin}, "
        f"steps={resolved.steps}"
    )
    return resolved, ChainRandom(seed)


def sample_full(d: DegreeSequence, config: SamplerConfig) -> Iterator[Digraph]:
    anchors = detect_anchors(d)
    if anchors and config.p >= 1.0:
        logger.warning(
            f"Sequence has {len(anchors)} anchored 3-cycle(s); "
            f"with p = 1 the full chain "
            f"cannot change their orientation"
        )
    resolved, rng = _prepare(d, config)
    g = realize(d)
    return _emit(g, d, resolved, rng, lambda graph, r: step_full(graph, resolved, r))


def sample_reduced(d: DegreeSequence, config: SamplerConfig) -> Iterator[Digraph]:
    anchors = detect_anchors(d)
    resolved, chain_rng = _prepare(d, config)
    g = realize(d)
    for triple in anchors:
        if is_induced_c3(g, triple.coordinates) is None:
            raise AnchorAssertionError(
                f"Anchored triple {triple.coordinates} is not an induced 3-cycle "
                f"of the start state"
            )
        if chain_rng.coin(0.5):
            try_c3_reorient(g, triple.coordinates)
    return _emit(g, d, resolved, chain_rng, step_switch)
