"""Simple directed graphs on vertices 1..N and the anchored-cycle vertex classes."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from app.config import settings
from app.core.degseq import DegreeSequence
from app.core.errors import (
    InvalidVertexError,
    MixedAttachmentError,
    NotInducedCycleError,
    ParseError,
)
from app.schemas.formats import ArcListPayload

logger = logging.getLogger(__name__)

Arc = Tuple[int, int]
# A directed 3-cycle a -> b -> c -> a, rotated so that a is the smallest vertex
Orientation = Tuple[int, int, int]


class _DenseArcs:
    __slots__ = ("_m",)

    def __init__(self, n: int, matrix: Optional[np.ndarray] = None):
        self._m = np.zeros((n, n), dtype=bool) if matrix is None else matrix

    def has(self, u: int, v: int) -> bool:
        return bool(self._m[u - 1, v - 1])

    def add(self, u: int, v: int) -> None:
        self._m[u - 1, v - 1] = True

    def discard(self, u: int, v: int) -> None:
        self._m[u - 1, v - 1] = False

    def sorted_arcs(self) -> List[Arc]:
        return [(int(u) + 1, int(v) + 1) for u, v in np.argwhere(self._m)]

    def copy(self) -> "_DenseArcs":
        return _DenseArcs(0, self._m.copy())


class _SparseArcs:
    __slots__ = ("_s",)

    def __init__(self, arcs: Optional[set] = None):
        self._s = set() if arcs is None else arcs

    def has(self, u: int, v: int) -> bool:
        return (u, v) in self._s

    def add(self, u: int, v: int) -> None:
        self._s.add((u, v))

    def discard(self, u: int, v: int) -> None:
        self._s.discard((u, v))

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self._s)

    def copy(self) -> "_SparseArcs":
        return _SparseArcs(set(self._s))


class Digraph:
    """Mutable simple digraph with O(1) arc membership and cached degrees.

    Graphs with N up to the dense threshold keep a boolean N x N matrix,
    larger ones a hash set of arcs. 2-cycles are allowed, self-loops are not.
    """

    __slots__ = ("_n", "_arcs", "_out", "_in", "_size")

    def __init__(
        self,
        n: int,
        arcs: Iterable[Arc] = (),
        *,
        dense_threshold: Optional[int] = None,
    ):
        if n < 1:
            raise InvalidVertexError("A digraph needs at least one vertex")
        threshold = dense_threshold
        if threshold is None:
            threshold = settings.dense_threshold
        self._n = n
        self._arcs = _DenseArcs(n) if n <= threshold else _SparseArcs()
        self._out = [0] * (n + 1)
        self._in = [0] * (n + 1)
        self._size = 0
        for u, v in arcs:
            self.add_arc(u, v)

    @property
    def n(self) -> int:
        return self._n

    @property
    def num_arcs(self) -> int:
        return self._size

    @property
    def is_dense(self) -> bool:
        return isinstance(self._arcs, _DenseArcs)

    def _check(self, u: int, v: int) -> None:
        if not (1 <= u <= self._n and 1 <= v <= self._n):
            raise InvalidVertexError(f"Arc ({u}, {v}) is out of range 1..{self._n}")

    def has_arc(self, u: int, v: int) -> bool:
        self._check(u, v)
        return self._arcs.has(u, v)

    def add_arc(self, u: int, v: int) -> None:
        self._check(u, v)
        if u == v:
            raise InvalidVertexError(f"Self-loop at vertex {u}")
        if self._arcs.has(u, v):
            raise InvalidVertexError(f"Arc ({u}, {v}) already present")
        self._arcs.add(u, v)
        self._out[u] += 1
        self._in[v] += 1
        self._size += 1

    def remove_arc(self, u: int, v: int) -> None:
        self._check(u, v)
        if not self._arcs.has(u, v):
            raise InvalidVertexError(f"Arc ({u}, {v}) not present")
        self._arcs.discard(u, v)
        self._out[u] -= 1
        self._in[v] -= 1
        self._size -= 1

    def replace_arcs(self, removed: Sequence[Arc], added: Sequence[Arc]) -> None:
        """Remove then add arcs as one step; untouched if any arc is invalid"""
        for u, v in removed:
            self._check(u, v)
            if not self._arcs.has(u, v):
                raise InvalidVertexError(f"Arc ({u}, {v}) not present")
        gone = set(removed)
        for u, v in added:
            self._check(u, v)
            if u == v or ((u, v) not in gone and self._arcs.has(u, v)):
                raise InvalidVertexError(f"Arc ({u}, {v}) cannot be added")
        for u, v in removed:
            self.remove_arc(u, v)
        for u, v in added:
            self.add_arc(u, v)

    def out_degree(self, v: int) -> int:
        return self._out[v]

    def in_degree(self, v: int) -> int:
        return self._in[v]

    def out_degrees(self) -> List[int]:
        return self._out[1:]

    def in_degrees(self) -> List[int]:
        return self._in[1:]

    def arcs(self) -> List[Arc]:
        return self._arcs.sorted_arcs()

    def canonical(self) -> Tuple[Arc, ...]:
        return tuple(self._arcs.sorted_arcs())

    def copy(self) -> "Digraph":
        g = Digraph.__new__(Digraph)
        g._n = self._n
        g._arcs = self._arcs.copy()
        g._out = list(self._out)
        g._in = list(self._in)
        g._size = self._size
        return g

    def recomputed_degrees(self) -> Tuple[List[int], List[int]]:
        out = [0] * self._n
        inn = [0] * self._n
        for u, v in self.arcs():
            out[u - 1] += 1
            inn[v - 1] += 1
        return out, inn

    def is_consistent(self) -> bool:
        """Cached degrees match the arc set and no self-loop is stored"""
        arcs = self.arcs()
        if any(u == v for u, v in arcs) or len(arcs) != self._size:
            return False
        return self.recomputed_degrees() == (self.out_degrees(), self.in_degrees())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._n == other._n and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self._n, self.canonical()))

    def __repr__(self) -> str:
        return f"Digraph(n={self._n}, arcs={self.arcs()})"

    def to_text(self) -> str:
        lines = [str(self._n)] + [f"{u} {v}" for u, v in self.arcs()]
        return "\n".join(lines) + "\n"

    def to_payload(self) -> ArcListPayload:
        return ArcListPayload(n=self._n, arcs=self.arcs())

    def to_json(self) -> str:
        return self.to_payload().model_dump_json()

    @classmethod
    def from_text(cls, text: str) -> "Digraph":
        n: Optional[int] = None
        g: Optional[Digraph] = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            try:
                values = [int(f) for f in fields]
            except ValueError:
                raise ParseError(f"non-integer field in {line!r}", lineno) from None
            if g is None:
                if len(values) != 1 or values[0] < 1:
                    raise ParseError(
                        "header must be a single positive vertex count", lineno
                    )
                n = values[0]
                g = cls(n)
                continue
            if len(values) != 2:
                raise ParseError(f"expected an arc 'u v', got {line!r}", lineno)
            try:
                g.add_arc(values[0], values[1])
            except InvalidVertexError as e:
                raise ParseError(str(e), lineno) from None
        if g is None:
            raise ParseError("arc list is empty")
        return g

    @classmethod
    def from_json(cls, text: str) -> "Digraph":
        try:
            payload = ArcListPayload.model_validate_json(text)
        except ValidationError as e:
            raise ParseError(f"invalid arc-list JSON: {e.errors()[0]['msg']}") from None
        try:
            return cls(payload.n, payload.arcs)
        except InvalidVertexError as e:
            raise ParseError(str(e)) from None


def degree_sequence_of(g: Digraph) -> DegreeSequence:
    return DegreeSequence.from_arrays(g.out_degrees(), g.in_degrees())


def _normalized(a: int, b: int, c: int) -> Orientation:
    if b < a and b < c:
        return b, c, a
    if c < a and c < b:
        return c, a, b
    return a, b, c


def is_induced_c3(g: Digraph, triple: Iterable[int]) -> Optional[Orientation]:
    """Orientation of the directed 3-cycle induced on ``triple``, or None.

    The induced subgraph must hold exactly the three arcs of one cyclic
    orientation; any reverse arc disqualifies it.
    """
    vertices = tuple(triple)
    if len(vertices) != 3 or len(set(vertices)) != 3:
        raise InvalidVertexError(f"Expected three distinct vertices, got {vertices}")
    a, b, c = vertices
    for v in vertices:
        if not 1 <= v <= g.n:
            raise InvalidVertexError(f"Vertex {v} is out of range 1..{g.n}")
    forward = (g.has_arc(a, b), g.has_arc(b, c), g.has_arc(c, a))
    backward = (g.has_arc(b, a), g.has_arc(c, b), g.has_arc(a, c))
    if all(forward) and not any(backward):
        return _normalized(a, b, c)
    if all(backward) and not any(forward):
        return _normalized(a, c, b)
    return None


def orientation_sign(orientation: Orientation) -> int:
    """+1 when the cycle runs through its vertices in increasing order, else -1"""
    a, b, c = orientation
    return 1 if b < c else -1


class VertexClass(str, Enum):
    C0 = "C0"
    CMINUS = "Cminus"
    CPLUS = "Cplus"
    CPM = "Cpm"


# Arc constraints from row class to column class: 1 all arcs, 0 none, None free
M_MATRIX: Dict[Tuple[VertexClass, VertexClass], Optional[int]] = {}
_M_ROWS = {
    VertexClass.CPM: (1, None, 1, None),
    VertexClass.CMINUS: (1, None, 1, None),
    VertexClass.CPLUS: (None, 0, None, 0),
    VertexClass.C0: (None, 0, None, 0),
}
_M_COLUMNS = (VertexClass.CPM, VertexClass.CMINUS, VertexClass.CPLUS, VertexClass.C0)
for _row, _entries in _M_ROWS.items():
    for _col, _entry in zip(_M_COLUMNS, _entries):
        M_MATRIX[(_row, _col)] = _entry


@dataclass(frozen=True)
class VertexClassification:
    cycle: Tuple[int, int, int]
    classes: Dict[int, VertexClass]

    def members(self, cls: VertexClass) -> List[int]:
        return sorted(x for x, c in self.classes.items() if c is cls)


@dataclass(frozen=True)
class PartitionViolation:
    source: int
    target: int
    source_class: VertexClass
    target_class: VertexClass
    expected: int

    def describe(self) -> str:
        verb = "required" if self.expected == 1 else "forbidden"
        return (
            f"arc ({self.source}, {self.target}) from {self.source_class.value} "
            f"to {self.target_class.value} is {verb}"
        )


def classify_against_cycle(g: Digraph, cycle: Iterable[int]) -> VertexClassification:
    triple = tuple(cycle)
    if is_induced_c3(g, triple) is None:
        raise NotInducedCycleError(f"{triple} does not induce a directed 3-cycle")
    members = set(triple)
    classes: Dict[int, VertexClass] = {}
    for x in range(1, g.n + 1):
        if x in members:
            continue
        out_arcs = sum(g.has_arc(x, c) for c in triple)
        in_arcs = sum(g.has_arc(c, x) for c in triple)
        pattern = (out_arcs, in_arcs)
        if pattern == (0, 0):
            classes[x] = VertexClass.C0
        elif pattern == (3, 0):
            classes[x] = VertexClass.CMINUS
        elif pattern == (0, 3):
            classes[x] = VertexClass.CPLUS
        elif pattern == (3, 3):
            classes[x] = VertexClass.CPM
        else:
            raise MixedAttachmentError(x, out_arcs, in_arcs)
    return VertexClassification(cycle=triple, classes=classes)


def verify_m_partition(
    g: Digraph, cl: VertexClassification
) -> List[PartitionViolation]:
    violations: List[PartitionViolation] = []
    outside = sorted(cl.classes)
    for x in outside:
        for y in outside:
            if x == y:
                continue
            cx, cy = cl.classes[x], cl.classes[y]
            expected = M_MATRIX[(cx, cy)]
            if expected is None:
                continue
            if g.has_arc(x, y) != (expected == 1):
                violations.append(PartitionViolation(x, y, cx, cy, expected))
    return violations


def induced_cycles(g: Digraph) -> Iterator[Orientation]:
    """All induced directed 3-cycles of ``g``, in canonical orientation form"""
    n = g.n
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            for c in range(b + 1, n + 1):
                found = is_induced_c3(g, (a, b, c))
                if found is not None:
                    yield found
