"""Degree-sequence arithmetic for simple directed graphs.

Coordinates are 1-based throughout: coordinate ``i`` is vertex ``v_i``. Arrays
are 0-based numpy arrays, so coordinate ``i`` lives at index ``i - 1``.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from app.core.errors import (
    AmbiguousAnchorError,
    DegreeSequenceError,
    NotDigraphicError,
    ParseError,
)
from app.schemas.formats import DEGREE_LIMIT, DegreeSequencePayload

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

_DIGIT_BITS = 16
_DIGIT_MASK = (1 << _DIGIT_BITS) - 1
# radix keys are bound**2, which must stay inside int64
_RADIX_BOUND = 1 << 31
# partial sums switch to Python integers beyond this
_SUM_LIMIT = 1 << 62
_ANCHOR_WINDOW = (0, 1, 1, 0)


class DegreeSequence:
    """Immutable list of nonnegative (out, in) pairs.

    Degrees above N - 1 are accepted; such a sequence is simply not digraphic.
    """

    __slots__ = ("_out", "_in")

    def __init__(self, pairs: Iterable[Sequence[int]]):
        rows = [tuple(p) for p in pairs]
        if any(len(p) != 2 for p in rows):
            raise DegreeSequenceError("Every coordinate must be an (out, in) pair")
        arr = _int64_array(rows).reshape(-1, 2)
        self._out, self._in = self._validated(arr[:, 0], arr[:, 1])

    @classmethod
    def from_arrays(
        cls, out_degrees: Sequence[int], in_degrees: Sequence[int]
    ) -> "DegreeSequence":
        obj = cls.__new__(cls)
        out = _int64_array(out_degrees)
        inn = _int64_array(in_degrees)
        if out.shape != inn.shape or out.ndim != 1:
            raise DegreeSequenceError(
                "Out- and in-degree arrays must be 1-D and of equal length"
            )
        obj._out, obj._in = cls._validated(out.copy(), inn.copy())
        return obj

    @staticmethod
    def _validated(
        out: np.ndarray, inn: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        n = out.size
        if n < 1:
            raise DegreeSequenceError("A degree sequence needs at least one coordinate")
        if out.min() < 0 or inn.min() < 0:
            raise DegreeSequenceError("Degrees must be nonnegative")
        out.setflags(write=False)
        inn.setflags(write=False)
        return out, inn

    @property
    def n(self) -> int:
        return int(self._out.size)

    @property
    def out_degrees(self) -> np.ndarray:
        return self._out

    @property
    def in_degrees(self) -> np.ndarray:
        return self._in

    @property
    def pairs(self) -> List[Pair]:
        return list(zip(self._out.tolist(), self._in.tolist()))

    @property
    def arc_counts(self) -> Pair:
        """Exact (sum of out-degrees, sum of in-degrees)"""
        return sum(self._out.tolist()), sum(self._in.tolist())

    def pair(self, coordinate: int) -> Pair:
        return int(self._out[coordinate - 1]), int(self._in[coordinate - 1])

    def relabeled(self, permutation: Sequence[int]) -> "DegreeSequence":
        """Coordinate ``i`` of the result carries coordinate ``permutation[i-1]``"""
        idx = np.asarray(permutation, dtype=np.int64) - 1
        return DegreeSequence.from_arrays(self._out[idx], self._in[idx])

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DegreeSequence):
            return NotImplemented
        return bool(
            np.array_equal(self._out, other._out)
            and np.array_equal(self._in, other._in)
        )

    def __hash__(self) -> int:
        return hash((self._out.tobytes(), self._in.tobytes()))

    def __repr__(self) -> str:
        return f"DegreeSequence({self.pairs})"


def _int64_array(values: object) -> np.ndarray:
    try:
        return np.asarray(values, dtype=np.int64)
    except OverflowError:
        raise DegreeSequenceError(
            f"Degrees must be below {DEGREE_LIMIT} (signed 64-bit)"
        ) from None


class Direction(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True, eq=False)
class OrderedView:
    """A degree sequence sorted under one of the two lexicographic orderings.

    ``permutation[p]`` is the original coordinate at sorted position ``p + 1``.
    """

    permutation: np.ndarray
    out_degrees: np.ndarray
    in_degrees: np.ndarray
    direction: Direction

    @property
    def sorted_pairs(self) -> List[Pair]:
        return list(zip(self.out_degrees.tolist(), self.in_degrees.tolist()))

    def positions(self) -> np.ndarray:
        """Inverse permutation: index ``c - 1`` holds the position of ``c``"""
        inv = np.empty_like(self.permutation)
        inv[self.permutation - 1] = np.arange(1, self.permutation.size + 1)
        return inv


@dataclass(frozen=True, eq=False)
class SlackSequences:
    s_bar: np.ndarray
    s_ubar: np.ndarray


@dataclass(frozen=True, order=True)
class AnchorTriple:
    k: int
    l: int  # noqa: E741
    coordinates: Tuple[int, int, int]

    @property
    def degree_pair(self) -> Pair:
        return self.k, self.l

    def as_set(self) -> frozenset:
        return frozenset(self.coordinates)


def _descending_order(
    primary: np.ndarray, secondary: np.ndarray, bound: int
) -> np.ndarray:
    """Stable order, descending on (primary, secondary), keys in [0, bound).

    Small bounds use an LSD radix sort on 16-bit digits; numpy sorts each
    digit with a counting/radix sort, so the ordering is linear in N. Bounds
    whose squared key would leave int64 fall back to a stable lexsort.
    """
    if bound > _RADIX_BOUND:
        return np.lexsort((-secondary, -primary))
    key = (bound * bound - 1) - (primary * bound + secondary)
    top = int(key.max())
    order = np.argsort((key & _DIGIT_MASK).astype(np.uint16), kind="stable")
    shift = _DIGIT_BITS
    while top >> shift:
        digit = ((key[order] >> shift) & _DIGIT_MASK).astype(np.uint16)
        order = order[np.argsort(digit, kind="stable")]
        shift += _DIGIT_BITS
    return order


def _ordered(out: np.ndarray, inn: np.ndarray, direction: Direction) -> OrderedView:
    if out.size == 0:
        empty = np.zeros(0, dtype=np.int64)
        return OrderedView(empty, empty, empty, direction)
    bound = max(int(out.max()), int(inn.max())) + 1
    if direction is Direction.POSITIVE:
        order = _descending_order(out, inn, bound)
    else:
        order = _descending_order(inn, out, bound)
    return OrderedView(
        permutation=order + 1,
        out_degrees=out[order],
        in_degrees=inn[order],
        direction=direction,
    )


def order_positive(d: DegreeSequence) -> OrderedView:
    return _ordered(d.out_degrees, d.in_degrees, Direction.POSITIVE)


def order_negative(d: DegreeSequence) -> OrderedView:
    return _ordered(d.out_degrees, d.in_degrees, Direction.NEGATIVE)


def _corrected_conjugate(a: np.ndarray) -> np.ndarray:
    # Coordinate i lands in J_k for k in [1, min(i-1, a_i)] and in I_k for
    # k in [i+1, min(a_i+1, N)]; both ranges go into one difference array.
    n = a.size
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    idx = np.arange(1, n + 1, dtype=np.int64)
    j_hi = np.minimum(idx - 1, a)
    j_hi = j_hi[j_hi >= 1]
    i_hi = np.minimum(a, n - 1) + 1
    starts = i_hi > idx
    diff = np.bincount(idx[starts] + 1, minlength=n + 2)
    diff -= np.bincount(i_hi[starts] + 1, minlength=n + 2)
    diff -= np.bincount(j_hi + 1, minlength=n + 2)
    diff[1] += j_hi.size
    return np.cumsum(diff)[1 : n + 1]


def corrected_conjugate(a: Sequence[int]) -> List[int]:
    arr = _int64_array(list(a))
    if arr.size and arr.min() < 0:
        raise DegreeSequenceError(
            "The corrected conjugate is defined for nonnegative lists"
        )
    return _corrected_conjugate(arr).tolist()


def _partial_sums(a: np.ndarray) -> np.ndarray:
    if a.size and int(a.max()) >= _SUM_LIMIT // a.size:
        return np.cumsum(a.astype(object))
    return np.cumsum(a)


def _slack(conjugated: np.ndarray, subtracted: np.ndarray) -> np.ndarray:
    body = np.cumsum(_corrected_conjugate(conjugated)) - _partial_sums(subtracted)
    return np.concatenate((np.zeros(1, dtype=np.int64), body))


def _slacks(pos: OrderedView, neg: OrderedView) -> SlackSequences:
    return SlackSequences(
        s_bar=_slack(pos.in_degrees, pos.out_degrees),
        s_ubar=_slack(neg.out_degrees, neg.in_degrees),
    )


def slack_sequences(d: DegreeSequence) -> SlackSequences:
    return _slacks(order_positive(d), order_negative(d))


def _degree_bounds_hold(out: np.ndarray, inn: np.ndarray) -> bool:
    """No vertex exceeds N - 1 arcs, and both sides count the same arcs"""
    n = out.size
    if n == 0:
        return True
    if out.min() < 0 or inn.min() < 0 or out.max() >= n or inn.max() >= n:
        return False
    return bool(out.sum() == inn.sum())


def is_digraphic_arrays(out_degrees: np.ndarray, in_degrees: np.ndarray) -> bool:
    """Fulkerson-Chen feasibility on raw arrays, used for residual sequences"""
    out = np.asarray(out_degrees, dtype=np.int64)
    inn = np.asarray(in_degrees, dtype=np.int64)
    if not _degree_bounds_hold(out, inn):
        return False
    pos = _ordered(out, inn, Direction.POSITIVE)
    return bool(_slack(pos.in_degrees, pos.out_degrees).min() >= 0)


def is_digraphic(d: DegreeSequence) -> bool:
    return is_digraphic_arrays(d.out_degrees, d.in_degrees)


def _window_starts(s: np.ndarray) -> np.ndarray:
    """Positions l (1-based) with (s[l-1], s[l], s[l+1], s[l+2]) == (0, 1, 1, 0)"""
    if s.size < 4:
        return np.zeros(0, dtype=np.int64)
    a, b, c, e = _ANCHOR_WINDOW
    hit = (s[:-3] == a) & (s[1:-2] == b) & (s[2:-1] == c) & (s[3:] == e)
    return np.flatnonzero(hit) + 1


def _run_length(view: OrderedView, position: int) -> int:
    """Number of coordinates equal to the pair at a 1-based sorted position"""
    out, inn = view.out_degrees, view.in_degrees
    target = (out[position - 1], inn[position - 1])
    lo = position - 1
    while lo > 0 and (out[lo - 1], inn[lo - 1]) == target:
        lo -= 1
    hi = position - 1
    while hi + 1 < out.size and (out[hi + 1], inn[hi + 1]) == target:
        hi += 1
    return hi - lo + 1


def detect_anchors(d: DegreeSequence) -> List[AnchorTriple]:
    """Find every anchored 3-cycle from the degree sequence alone.

    A triple with shared pair (k, l) is anchored when it fills positions
    l..l+2 of the positive ordering and k..k+2 of the negative ordering and
    both slack sequences read (0, 1, 1, 0) over the window starting one
    position earlier. Coordinates are reported in the original labeling.
    """
    if not _degree_bounds_hold(d.out_degrees, d.in_degrees):
        raise NotDigraphicError(f"{d!r} has no simple directed realization")
    pos = order_positive(d)
    neg = order_negative(d)
    slack = _slacks(pos, neg)
    if slack.s_bar.min() < 0:
        raise NotDigraphicError(f"{d!r} has no simple directed realization")
    n = d.n
    if n < 3:
        return []

    negative_hits = set(_window_starts(slack.s_ubar).tolist())
    neg_positions = neg.positions()

    triples: List[AnchorTriple] = []
    for l in _window_starts(slack.s_bar).tolist():  # noqa: E741
        k = int(pos.out_degrees[l - 1])
        if int(pos.in_degrees[l - 1]) != l or k < 1:
            continue
        window = [
            (int(pos.out_degrees[p]), int(pos.in_degrees[p]))
            for p in range(l - 1, l + 2)
        ]
        if any(pair != (k, l) for pair in window):
            continue
        if k not in negative_hits:
            continue
        multiplicity = _run_length(pos, l)
        if multiplicity > 3:
            logger.error(
                f"Ambiguous anchor window at (k, l) = ({k}, {l}), "
                f"multiplicity {multiplicity}"
            )
            raise AmbiguousAnchorError(k, l, multiplicity)
        coords = pos.permutation[l - 1 : l + 2]
        if sorted(neg_positions[coords - 1].tolist()) != [k, k + 1, k + 2]:
            continue
        coordinates = tuple(sorted(int(c) for c in coords))
        triples.append(AnchorTriple(k=k, l=l, coordinates=coordinates))

    triples.sort()
    logger.debug(f"Detected {len(triples)} anchored triple(s) at length {n}")
    return triples


def parse_degree_sequence_text(text: str) -> DegreeSequence:
    """Parse one "out in" pair per line; blank lines and '#' comments are skipped"""
    pairs: List[Pair] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected two integers 'out in', got {line!r}", lineno)
        try:
            out, inn = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer degree in {line!r}", lineno) from None
        if out < 0 or inn < 0:
            raise ParseError("degrees must be nonnegative", lineno)
        if out >= DEGREE_LIMIT or inn >= DEGREE_LIMIT:
            raise ParseError(f"degrees must be below {DEGREE_LIMIT}", lineno)
        pairs.append((out, inn))
    if not pairs:
        raise ParseError("degree sequence is empty")
    return DegreeSequence(pairs)


def parse_degree_sequence_json(text: str) -> DegreeSequence:
    try:
        pairs = DegreeSequencePayload.validate_json(text)
    except ValidationError as e:
        error = e.errors()[0]
        where = ".".join(str(part) for part in error["loc"])
        detail = f" at {where}" if where else ""
        message = f"invalid degree-sequence JSON{detail}: {error['msg']}"
        raise ParseError(message) from None
    if not pairs:
        raise ParseError("degree sequence is empty")
    return DegreeSequence(pairs)


def parse_degree_sequence(text: str) -> DegreeSequence:
    """Dispatch on content: a leading '[' selects the JSON reader"""
    if text.lstrip().startswith("["):
        return parse_degree_sequence_json(text)
    return parse_degree_sequence_text(text)
