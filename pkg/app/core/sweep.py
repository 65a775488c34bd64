"""Desk-scale sweep certifying the detector and the meta-graph structure.

Labeled sequences are grouped by their positively ordered form. The
meta-graph and the brute-force oracle run once per group; the oracle's
triples are carried back to each labeled sequence through its ordering
permutation before they are compared with the detector.
"""

import logging
from dataclasses import dataclass
from itertools import chain, combinations_with_replacement, product
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Set,
    Tuple,
)

import numpy as np

from app.config import settings
from app.core.degseq import (
    AnchorTriple,
    DegreeSequence,
    detect_anchors,
    is_digraphic,
    order_positive,
)
from app.core.errors import SamplerError
from app.core.metagraph import build_metagraph, component_structure
from app.schemas.reports import PropertyResult, SweepReport

logger = logging.getLogger(__name__)

Detector = Callable[[DegreeSequence], List[AnchorTriple]]

DIGRAPHIC_TEST = "digraphic_test_matches_enumeration"
JOINT_CONNECTED = "switch_and_c3_metagraph_connected"
SWITCH_SPLIT = "switch_metagraph_split_iff_anchored"
DETECTOR_ORACLE = "detector_matches_oracle"
PRODUCT_STRUCTURE = "anchored_product_structure"
_PROPERTIES = (
    DIGRAPHIC_TEST,
    JOINT_CONNECTED,
    SWITCH_SPLIT,
    DETECTOR_ORACLE,
    PRODUCT_STRUCTURE,
)
_KEPT_FAILURES = 5

# N = 5 multisets are restricted to this many arcs
N5_MAX_ARCS = 10


def labeled_sequences(n: int) -> Iterator[DegreeSequence]:
    """Every labeled sequence of length n with entries in [0, n-1]^2"""
    pairs = list(product(range(n), repeat=2))
    for combo in product(pairs, repeat=n):
        yield DegreeSequence(combo)


def bounded_multisets(n: int, max_arcs: int) -> Iterator[DegreeSequence]:
    """One representative per multiset of pairs with at most ``max_arcs`` out-arcs"""
    pairs = list(product(range(n), repeat=2))
    for combo in combinations_with_replacement(pairs, n):
        if sum(p[0] for p in combo) <= max_arcs:
            yield DegreeSequence(combo)


def random_digraphic(n: int, count: int, seed: int) -> Iterator[DegreeSequence]:
    """Degree sequences of random simple digraphs, each with its own arc density"""
    gen = np.random.default_rng(seed)
    for _ in range(count):
        matrix = gen.random((n, n)) < gen.random()
        np.fill_diagonal(matrix, False)
        yield DegreeSequence.from_arrays(matrix.sum(axis=1), matrix.sum(axis=0))


def desk_sequences(
    max_n: int = 4, include_n5: bool = False
) -> Iterator[DegreeSequence]:
    streams: List[Iterable[DegreeSequence]] = [
        labeled_sequences(n) for n in range(1, max_n + 1)
    ]
    if include_n5:
        streams.append(bounded_multisets(5, N5_MAX_ARCS))
        random_n5 = random_digraphic(5, settings.sweep_random_n5, settings.sweep_seed)
        streams.append(random_n5)
    return chain.from_iterable(streams)


@dataclass
class _GroupResult:
    realizations: int
    joint_connected: bool
    switch_components: int
    # anchored triples by sorted position
    anchors: List[Tuple[int, int, int]]
    product_structure_ok: bool
    details: List[str]


def _analyze(canonical: DegreeSequence, cap: Optional[int]) -> _GroupResult:
    m = build_metagraph(canonical, cap=cap)
    if m.order == 0:
        return _GroupResult(0, True, 0, [], True, [])
    structure = component_structure(m)
    return _GroupResult(
        realizations=m.order,
        joint_connected=len(structure.joint_components) == 1,
        switch_components=len(structure.e2_components),
        anchors=structure.anchors_bruteforce,
        product_structure_ok=structure.product_structure_ok,
        details=structure.details,
    )


class _Tally:
    def __init__(self) -> None:
        self.results: Dict[str, PropertyResult] = {
            name: PropertyResult(name=name) for name in _PROPERTIES
        }

    def record(self, name: str, ok: bool, d: DegreeSequence, note: str = "") -> None:
        result = self.results[name]
        result.checked += 1
        if ok:
            return
        result.failed += 1
        if len(result.failures) < _KEPT_FAILURES:
            result.failures.append(f"{d.pairs}{': ' + note if note else ''}")


def run_sweep(
    sequences: Iterable[DegreeSequence],
    detector: Detector = detect_anchors,
    cap: Optional[int] = None,
    max_n: int = 4,
) -> SweepReport:
    cache: Dict[Tuple[Tuple[int, int], ...], _GroupResult] = {}
    tally = _Tally()
    count = 0
    current_n = 0

    for d in sequences:
        count += 1
        if d.n != current_n:
            current_n = d.n
            logger.info(f"Sweeping sequences of length {current_n}")
        view = order_positive(d)
        key = tuple(view.sorted_pairs)
        group = cache.get(key)
        if group is None:
            group = _analyze(d.relabeled(view.permutation), cap)
            cache[key] = group

        digraphic = is_digraphic(d)
        tally.record(DIGRAPHIC_TEST, digraphic == (group.realizations > 0), d)
        if not digraphic:
            continue

        tally.record(JOINT_CONNECTED, group.joint_connected, d)

        perm = view.permutation.tolist()
        expected: Set[FrozenSet[int]] = {
            frozenset(perm[p - 1] for p in t) for t in group.anchors
        }
        try:
            found = {t.as_set() for t in detector(d)}
        except SamplerError as e:
            note = f"detector raised {type(e).__name__}: {e}"
            tally.record(DETECTOR_ORACLE, False, d, note)
            continue
        tally.record(
            DETECTOR_ORACLE,
            found == expected,
            d,
            f"detector {sorted(map(sorted, found))}, "
            f"oracle {sorted(map(sorted, expected))}",
        )
        split = group.switch_components > 1
        tally.record(
            SWITCH_SPLIT,
            split == bool(found) == bool(expected),
            d,
            f"{group.switch_components} components",
        )
        if expected:
            tally.record(
                PRODUCT_STRUCTURE,
                group.product_structure_ok,
                d,
                "; ".join(group.details),
            )

    report = SweepReport(
        max_n=max_n,
        sequences=count,
        canonical_forms=len(cache),
        properties=list(tally.results.values()),
    )
    logger.info(f"Sweep covered {count} sequences in {len(cache)} canonical forms")
    return report


def desk_sweep(
    max_n: int = 4,
    include_n5: bool = False,
    detector: Detector = detect_anchors,
) -> SweepReport:
    """The exhaustive N <= max_n sweep, optionally followed by the N = 5 subset"""
    top = 5 if include_n5 else max_n
    return run_sweep(desk_sequences(max_n, include_n5), detector=detector, max_n=top)
