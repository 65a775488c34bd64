import json
from itertools import permutations

import pytest

from app.core.degseq import DegreeSequence
from app.core.errors import (
    InvalidVertexError,
    MixedAttachmentError,
    NotInducedCycleError,
    ParseError,
)
from app.core.metagraph import enumerate_realizations
from app.models.digraph import (
    Digraph,
    VertexClass,
    classify_against_cycle,
    degree_sequence_of,
    induced_cycles,
    is_induced_c3,
    orientation_sign,
    verify_m_partition,
)

CYCLE = [(1, 2), (2, 3), (3, 1)]


@pytest.fixture(params=["dense", "sparse"])
def make_graph(request):
    threshold = 4096 if request.param == "dense" else 0

    def _make(n, arcs=()):
        return Digraph(n, arcs, dense_threshold=threshold)

    return _make


class TestDigraph:
    def test_storage_follows_threshold(self):
        assert Digraph(5, dense_threshold=4).is_dense is False
        assert Digraph(4, dense_threshold=4).is_dense is True

    def test_degrees_and_arcs(self, make_graph):
        g = make_graph(3, [(1, 2), (2, 1), (2, 3)])
        assert g.num_arcs == 3
        assert g.out_degrees() == [1, 2, 0]
        assert g.in_degrees() == [1, 1, 1]
        assert g.arcs() == [(1, 2), (2, 1), (2, 3)]
        assert g.has_arc(2, 1) and not g.has_arc(3, 2)

    def test_rejects_self_loops_duplicates_and_range(self, make_graph):
        g = make_graph(3, CYCLE)
        with pytest.raises(InvalidVertexError):
            g.add_arc(2, 2)
        with pytest.raises(InvalidVertexError):
            g.add_arc(1, 2)
        with pytest.raises(InvalidVertexError):
            g.add_arc(1, 4)
        with pytest.raises(InvalidVertexError):
            g.has_arc(0, 1)
        with pytest.raises(InvalidVertexError):
            g.remove_arc(2, 1)

    def test_two_cycles_are_allowed(self, make_graph):
        g = make_graph(2, [(1, 2), (2, 1)])
        assert degree_sequence_of(g).pairs == [(1, 1), (1, 1)]

    def test_replace_arcs_is_atomic(self, make_graph):
        g = make_graph(4, [(1, 2), (3, 4), (1, 4)])
        with pytest.raises(InvalidVertexError):
            g.replace_arcs([(1, 2), (3, 4)], [(1, 4), (3, 2)])
        assert g.arcs() == [(1, 2), (1, 4), (3, 4)]
        g.replace_arcs([(1, 2), (1, 4)], [(1, 4), (1, 3)])
        assert g.arcs() == [(1, 3), (1, 4), (3, 4)]

    def test_degrees_stay_consistent_after_mutation(self, make_graph):
        g = make_graph(5)
        for u, v in [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 1)]:
            g.add_arc(u, v)
        g.remove_arc(3, 4)
        g.replace_arcs([(1, 2)], [(1, 3)])
        assert g.is_consistent()
        assert g.recomputed_degrees() == (g.out_degrees(), g.in_degrees())

    def test_copy_is_independent(self, make_graph):
        g = make_graph(3, CYCLE)
        h = g.copy()
        h.remove_arc(1, 2)
        assert g.has_arc(1, 2)
        assert g != h

    def test_equality_ignores_storage(self):
        assert Digraph(3, CYCLE, dense_threshold=0) == Digraph(3, CYCLE)
        assert hash(Digraph(3, CYCLE, dense_threshold=0)) == hash(Digraph(3, CYCLE))


class TestDegreeSequenceOf:
    def test_examples(self):
        assert degree_sequence_of(Digraph(3)).pairs == [(0, 0)] * 3
        assert degree_sequence_of(Digraph(3, CYCLE)) == DegreeSequence([(1, 1)] * 3)
        d = degree_sequence_of(Digraph(2, [(1, 2), (2, 1)]))
        assert d.pairs == [(1, 1), (1, 1)]


class TestSerialization:
    def test_text_round_trip(self):
        g = Digraph(4, [(3, 1), (1, 2), (2, 1)])
        text = g.to_text()
        assert text == "4\n1 2\n2 1\n3 1\n"
        assert Digraph.from_text(text) == g

    def test_json_round_trip(self):
        g = Digraph(3, [(2, 3), (1, 2)])
        payload = json.loads(g.to_json())
        assert payload == {"n": 3, "arcs": [[1, 2], [2, 3]]}
        assert Digraph.from_json(g.to_json()) == g
        assert g.to_payload().arcs == [(1, 2), (2, 3)]

    def test_text_errors_carry_line_numbers(self):
        with pytest.raises(ParseError) as info:
            Digraph.from_text("3\n1 2\n2 2\n")
        assert info.value.line == 3
        with pytest.raises(ParseError) as info:
            Digraph.from_text("# arcs\n3\n1 5\n")
        assert info.value.line == 3
        with pytest.raises(ParseError):
            Digraph.from_text("")
        with pytest.raises(ParseError):
            Digraph.from_json('{"n": 2, "arcs": [[1, 1]]}')


class TestInducedCycle:
    def test_examples(self):
        assert is_induced_c3(Digraph(3, CYCLE), (1, 2, 3)) == (1, 2, 3)
        assert is_induced_c3(Digraph(3, CYCLE + [(2, 1)]), (1, 2, 3)) is None
        assert is_induced_c3(Digraph(3, [(1, 2), (2, 3)]), (1, 2, 3)) is None

    def test_relabelings(self):
        g = Digraph(3, CYCLE)
        reversed_g = Digraph(3, [(2, 1), (3, 2), (1, 3)])
        for triple in permutations((1, 2, 3)):
            assert is_induced_c3(g, triple) == (1, 2, 3)
            assert is_induced_c3(reversed_g, triple) == (1, 3, 2)
        assert orientation_sign((1, 2, 3)) == 1
        assert orientation_sign((1, 3, 2)) == -1

    def test_rejects_bad_triples(self):
        g = Digraph(3, CYCLE)
        with pytest.raises(InvalidVertexError):
            is_induced_c3(g, (1, 2, 4))
        with pytest.raises(InvalidVertexError):
            is_induced_c3(g, (1, 1, 2))

    def test_induced_cycles(self):
        g = Digraph(4, CYCLE + [(4, 1), (4, 2), (4, 3)])
        assert list(induced_cycles(g)) == [(1, 2, 3)]


def _attached(extra):
    return Digraph(max(max(a) for a in CYCLE + extra), CYCLE + extra)


class TestClassification:
    def test_pm_vertex(self):
        extra = [(4, 1), (4, 2), (4, 3), (1, 4), (2, 4), (3, 4)]
        cl = classify_against_cycle(_attached(extra), (1, 2, 3))
        assert cl.classes == {4: VertexClass.CPM}
        assert verify_m_partition(_attached(extra), cl) == []

    def test_isolated_vertex(self):
        cl = classify_against_cycle(Digraph(4, CYCLE), (1, 2, 3))
        assert cl.classes == {4: VertexClass.C0}
        assert cl.members(VertexClass.C0) == [4]

    def test_mixed_attachment(self):
        with pytest.raises(MixedAttachmentError) as info:
            classify_against_cycle(Digraph(4, CYCLE + [(1, 4)]), (1, 2, 3))
        assert info.value.vertex == 4

    def test_requires_induced_cycle(self):
        with pytest.raises(NotInducedCycleError):
            classify_against_cycle(Digraph(4, [(1, 2), (2, 3)]), (1, 2, 3))

    def test_independent_zero_class(self):
        g = Digraph(5, CYCLE + [(4, 5)])
        violations = verify_m_partition(g, classify_against_cycle(g, (1, 2, 3)))
        assert [(v.source, v.target) for v in violations] == [(4, 5)]
        assert violations[0].expected == 0

    def test_plus_to_minus_arc(self):
        # vertex 4 receives from the cycle, vertex 5 feeds it; 5 -> 4 is required
        extra = [(1, 4), (2, 4), (3, 4), (5, 1), (5, 2), (5, 3), (5, 4), (4, 5)]
        g = Digraph(5, CYCLE + extra)
        cl = classify_against_cycle(g, (1, 2, 3))
        assert cl.classes == {4: VertexClass.CPLUS, 5: VertexClass.CMINUS}
        violations = verify_m_partition(g, cl)
        assert len(violations) == 1
        assert violations[0].source_class is VertexClass.CPLUS
        assert violations[0].target_class is VertexClass.CMINUS
        assert "forbidden" in violations[0].describe()

    def test_missing_minus_to_plus_arc(self):
        g = Digraph(5, CYCLE + [(1, 4), (2, 4), (3, 4), (5, 1), (5, 2), (5, 3)])
        violations = verify_m_partition(g, classify_against_cycle(g, (1, 2, 3)))
        assert [(v.source, v.target, v.expected) for v in violations] == [(5, 4, 1)]

    def test_anchored_realizations_are_partitioned(self, anchored_seq):
        realizations = enumerate_realizations(anchored_seq)
        assert len(realizations) == 2
        for g in realizations:
            cl = classify_against_cycle(g, (2, 3, 4))
            assert cl.classes == {1: VertexClass.CPM}
            assert verify_m_partition(g, cl) == []
