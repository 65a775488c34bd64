"""Exhaustive desk-scale machinery: realizations, the meta-graph, anchor oracles.

Meta-graph vertices are labeled realizations indexed 0..R-1 in canonical
(sorted arc list) order. E2 edges join realizations one 2-switch apart, E3
edges join realizations one directed 3-cycle reorientation apart.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, perm
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from app.config import settings
from app.core.degseq import DegreeSequence, detect_anchors, is_digraphic
from app.core.errors import CapExceededError, NotDigraphicError
from app.models.digraph import (
    Arc,
    Digraph,
    induced_cycles,
    is_induced_c3,
    orientation_sign,
)
from app.workers.enumeration_worker import RowSearch, Rows, enumerate_branch

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
Triple = Tuple[int, int, int]


def _rows_to_graph(n: int, rows: Rows) -> Digraph:
    return Digraph(n, [(r + 1, c + 1) for r, cols in enumerate(rows) for c in cols])


def enumerate_realizations(
    d: DegreeSequence,
    cap: Optional[int] = None,
    node_budget: Optional[int] = None,
    jobs: int = 1,
) -> List[Digraph]:
    """Every realization of ``d`` in canonical order; empty if ``d`` is not digraphic"""
    cap = settings.enum_max_n if cap is None else cap
    budget = settings.enum_node_budget if node_budget is None else node_budget
    n = d.n
    if n > cap:
        raise CapExceededError(f"N = {n} exceeds the enumeration cap of {cap}")
    out = d.out_degrees.tolist()
    inn = d.in_degrees.tolist()
    if sum(out) != sum(inn):
        return []

    if jobs > 1:
        branches = RowSearch(out, inn, budget).choices(0)
        logger.debug(f"Dispatching {len(branches)} branches to {jobs} workers")
        payloads = [(out, inn, branch, budget) for branch in branches]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(enumerate_branch, payloads))
        found = [rows for rows_list, _ in results for rows in rows_list]
        nodes = sum(count for _, count in results)
        if nodes > budget:
            raise CapExceededError(f"Enumeration exceeded the node budget of {budget}")
    else:
        found, nodes = enumerate_branch((out, inn, None, budget))

    graphs = [_rows_to_graph(n, rows) for rows in found]
    graphs.sort(key=lambda g: g.canonical())
    logger.debug(f"Enumerated {len(graphs)} realizations in {nodes} search nodes")
    return graphs


@dataclass
class MetaGraph:
    degree_sequence: DegreeSequence
    realizations: List[Digraph]
    e2_edges: Set[Edge] = field(default_factory=set)
    e3_edges: Set[Edge] = field(default_factory=set)
    # ordered 4-tuples realizing the 2-switch from i to j, keyed (i, j)
    e2_tuples: Dict[Edge, int] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.realizations)

    def switch_graph(self) -> nx.Graph:
        """The meta-graph restricted to E2"""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.order))
        graph.add_edges_from(self.e2_edges, kind="E2")
        return graph

    def full_graph(self) -> nx.Graph:
        graph = self.switch_graph()
        graph.add_edges_from(self.e3_edges, kind="E3")
        return graph


def _switch_neighbors(g: Digraph, arcs: FrozenSet[Arc]) -> List[FrozenSet[Arc]]:
    found = []
    for (a, b), (c, d) in combinations(sorted(arcs), 2):
        if len({a, b, c, d}) < 4 or g.has_arc(a, d) or g.has_arc(c, b):
            continue
        found.append((arcs - {(a, b), (c, d)}) | {(a, d), (c, b)})
    return found


def build_metagraph(
    d: DegreeSequence,
    cap: Optional[int] = None,
    node_budget: Optional[int] = None,
    jobs: int = 1,
) -> MetaGraph:
    realizations = enumerate_realizations(
        d, cap=cap, node_budget=node_budget, jobs=jobs
    )
    arc_sets = [frozenset(g.arcs()) for g in realizations]
    index = {arcs: i for i, arcs in enumerate(arc_sets)}
    m = MetaGraph(degree_sequence=d, realizations=realizations)

    for i, (g, arcs) in enumerate(zip(realizations, arc_sets)):
        for target in _switch_neighbors(g, arcs):
            j = index[target]
            m.e2_edges.add((min(i, j), max(i, j)))
            # (a, b, c, d) and (c, d, a, b) both draw this switch
            m.e2_tuples[(i, j)] = m.e2_tuples.get((i, j), 0) + 2
        for a, b, c in induced_cycles(g):
            target = (arcs - {(a, b), (b, c), (c, a)}) | {(b, a), (c, b), (a, c)}
            j = index[target]
            m.e3_edges.add((min(i, j), max(i, j)))

    logger.debug(
        f"Meta-graph: {m.order} realizations, {len(m.e2_edges)} E2 and "
        f"{len(m.e3_edges)} E3 edges"
    )
    return m


def anchored_triples(realizations: Sequence[Digraph]) -> List[Triple]:
    """Triples inducing a directed 3-cycle in every realization"""
    if not realizations:
        return []
    common: Optional[Set[Triple]] = None
    for g in realizations:
        here = {tuple(sorted(c)) for c in induced_cycles(g)}
        common = here if common is None else common & here
        if not common:
            return []
    return sorted(common or ())


def anchor_coordinates(realizations: Sequence[Digraph]) -> List[int]:
    """Coordinates lying on some induced directed 3-cycle in every realization"""
    if not realizations:
        return []
    common: Optional[Set[int]] = None
    for g in realizations:
        here = {v for c in induced_cycles(g) for v in c}
        common = here if common is None else common & here
        if not common:
            return []
    return sorted(common or ())


def brute_force_anchors(d: DegreeSequence, cap: Optional[int] = None) -> List[Triple]:
    realizations = enumerate_realizations(d, cap=cap)
    if not realizations:
        raise NotDigraphicError(f"{d!r} has no simple directed realization")
    return anchored_triples(realizations)


def brute_force_anchor_coordinates(
    d: DegreeSequence, cap: Optional[int] = None
) -> List[int]:
    realizations = enumerate_realizations(d, cap=cap)
    if not realizations:
        raise NotDigraphicError(f"{d!r} has no simple directed realization")
    return anchor_coordinates(realizations)


def orientation_vector(g: Digraph, triples: Sequence[Triple]) -> Tuple[int, ...]:
    """Per triple: +1 / -1 for the two cyclic orientations, 0 if not an induced cycle"""
    vector = []
    for triple in triples:
        orientation = is_induced_c3(g, triple)
        vector.append(0 if orientation is None else orientation_sign(orientation))
    return tuple(vector)


@dataclass
class ComponentStructure:
    e2_components: List[List[int]]
    joint_components: List[List[int]]
    anchors_bruteforce: List[Triple]
    anchors_general: List[int]
    anchors_degseq: List[Triple]
    product_structure_ok: bool
    details: List[str]

    @property
    def switch_connected(self) -> bool:
        return len(self.e2_components) == 1


Profile = Tuple[int, int, int, Tuple[int, ...]]


def _component_profile(graph: nx.Graph, switch: nx.Graph, nodes: List[int]) -> Profile:
    sub = graph.subgraph(nodes)
    degrees = tuple(sorted(deg for _, deg in sub.degree()))
    switch_size = switch.subgraph(nodes).number_of_edges()
    return len(nodes), switch_size, sub.number_of_edges(), degrees


def component_structure(m: MetaGraph) -> ComponentStructure:
    """Component analysis of the meta-graph against the product structure.

    Components are compared by order, E2 size, joint size and sorted degree
    profile; this is a necessary condition for isomorphism, not a full test.
    """
    switch = m.switch_graph()
    full = m.full_graph()
    e2_components = sorted(sorted(c) for c in nx.connected_components(switch))
    joint_components = sorted(sorted(c) for c in nx.connected_components(full))

    triples = anchored_triples(m.realizations)
    general = anchor_coordinates(m.realizations)
    if m.realizations and is_digraphic(m.degree_sequence):
        degseq_triples = [t.coordinates for t in detect_anchors(m.degree_sequence)]
    else:
        degseq_triples = []

    details: List[str] = []
    if m.order == 0:
        return ComponentStructure(
            e2_components,
            joint_components,
            triples,
            general,
            degseq_triples,
            True,
            details,
        )

    k = len(triples)
    if len(joint_components) != 1:
        details.append(f"meta-graph has {len(joint_components)} components, expected 1")
    if len(e2_components) != 2**k:
        details.append(
            f"switch meta-graph has {len(e2_components)} components, expected 2^{k}"
        )

    profiles = {_component_profile(full, switch, c) for c in e2_components}
    if len(profiles) > 1:
        details.append(
            "switch components differ in (order, E2 size, size, degree profile): "
            f"{sorted(profiles)}"
        )

    seen: Dict[Tuple[int, ...], int] = {}
    for idx, comp in enumerate(e2_components):
        vectors = {orientation_vector(m.realizations[v], triples) for v in comp}
        if len(vectors) != 1:
            details.append(
                f"switch component {idx} mixes anchored orientations {sorted(vectors)}"
            )
            continue
        vector = vectors.pop()
        if vector in seen:
            details.append(
                f"switch components {seen[vector]} and {idx} share "
                f"orientation vector {vector}"
            )
        seen[vector] = idx

    return ComponentStructure(
        e2_components=e2_components,
        joint_components=joint_components,
        anchors_bruteforce=triples,
        anchors_general=general,
        anchors_degseq=degseq_triples,
        product_structure_ok=not details,
        details=details,
    )


def transition_matrix(m: MetaGraph, p: float) -> np.ndarray:
    """Kernel of the full chain with ordered 4-tuples and unordered triples"""
    n = m.degree_sequence.n
    size = m.order
    matrix = np.zeros((size, size))
    tuples = perm(n, 4) if n >= 4 else 0
    triples = comb(n, 3) if n >= 3 else 0
    for (i, j), count in m.e2_tuples.items():
        matrix[i, j] += p * count / tuples
    for i, j in m.e3_edges:
        matrix[i, j] += (1 - p) / triples
        matrix[j, i] += (1 - p) / triples
    matrix[np.diag_indices(size)] = 1.0 - matrix.sum(axis=1)
    return matrix


def to_dot(m: MetaGraph) -> str:
    """DOT text of the meta-graph: E2 edges solid, E3 edges dashed"""
    graph = nx.Graph()
    for i, g in enumerate(m.realizations):
        graph.add_node(i, label=" ".join(f"{u}>{v}" for u, v in g.arcs()))
    for i, j in sorted(m.e2_edges):
        graph.add_edge(i, j, style="solid")
    for i, j in sorted(m.e3_edges):
        graph.add_edge(i, j, style="dashed")
    return nx.nx_pydot.to_pydot(graph).to_string()
