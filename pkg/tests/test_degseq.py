import time

import numpy as np
import pytest

from app.core.degseq import (
    DegreeSequence,
    Direction,
    corrected_conjugate,
    detect_anchors,
    is_digraphic,
    order_negative,
    order_positive,
    parse_degree_sequence,
    parse_degree_sequence_json,
    parse_degree_sequence_text,
    slack_sequences,
)
from app.core.errors import DegreeSequenceError, NotDigraphicError, ParseError


def _random_digraph_degrees(gen, n):
    matrix = gen.random((n, n)) < gen.random()
    np.fill_diagonal(matrix, False)
    return DegreeSequence.from_arrays(matrix.sum(axis=1), matrix.sum(axis=0))


class TestDegreeSequence:
    def test_pairs_and_accessors(self):
        d = DegreeSequence([(1, 2), (3, 0), (1, 1)])
        assert d.n == 3
        assert len(d) == 3
        assert d.pairs == [(1, 2), (3, 0), (1, 1)]
        assert d.pair(2) == (3, 0)
        assert list(d) == d.pairs
        assert d.out_degrees.tolist() == [1, 3, 1]
        assert d.in_degrees.tolist() == [2, 0, 1]

    def test_rejects_empty_and_negative(self):
        with pytest.raises(DegreeSequenceError):
            DegreeSequence([])
        with pytest.raises(DegreeSequenceError):
            DegreeSequence([(1, -1), (0, 1)])
        with pytest.raises(DegreeSequenceError):
            DegreeSequence([(1, 1, 1)])

    def test_degree_above_bound_is_accepted_but_not_digraphic(self):
        d = DegreeSequence([(2, 0), (0, 1)])
        assert d.n == 2
        assert not is_digraphic(d)

    def test_arrays_are_read_only(self):
        d = DegreeSequence([(1, 1), (1, 1)])
        with pytest.raises(ValueError):
            d.out_degrees[0] = 0

    def test_equality_and_hash(self):
        a = DegreeSequence([(1, 1), (1, 1)])
        b = DegreeSequence.from_arrays([1, 1], [1, 1])
        assert a == b
        assert hash(a) == hash(b)
        assert a != DegreeSequence([(0, 0), (0, 0)])

    def test_relabeled(self):
        d = DegreeSequence([(1, 2), (3, 0), (1, 1)])
        assert d.relabeled([2, 1, 3]).pairs == [(3, 0), (1, 2), (1, 1)]


class TestOrderings:
    def test_positive_examples(self):
        view = order_positive(DegreeSequence([(1, 2), (3, 0), (1, 1)]))
        assert view.direction is Direction.POSITIVE
        assert view.sorted_pairs == [(3, 0), (1, 2), (1, 1)]
        assert view.permutation.tolist() == [2, 1, 3]

        view = order_positive(DegreeSequence([(1, 1)] * 3))
        assert view.permutation.tolist() == [1, 2, 3]

        view = order_positive(DegreeSequence([(2, 2), (3, 3), (2, 2), (2, 2)]))
        assert view.sorted_pairs == [(3, 3), (2, 2), (2, 2), (2, 2)]
        assert view.permutation.tolist() == [2, 1, 3, 4]

    def test_negative_examples(self):
        view = order_negative(DegreeSequence([(1, 2), (3, 0), (1, 1)]))
        assert view.direction is Direction.NEGATIVE
        assert view.sorted_pairs == [(1, 2), (1, 1), (3, 0)]
        assert view.permutation.tolist() == [1, 3, 2]

        view = order_negative(DegreeSequence([(1, 1), (1, 1)]))
        assert view.permutation.tolist() == [1, 2]

        view = order_negative(DegreeSequence([(0, 3), (2, 2)]))
        assert view.sorted_pairs == [(0, 3), (2, 2)]
        assert view.permutation.tolist() == [1, 2]

    def test_positions_invert_permutation(self):
        view = order_positive(DegreeSequence([(1, 2), (3, 0), (1, 1)]))
        positions = view.positions()
        for position, coordinate in enumerate(view.permutation.tolist(), start=1):
            assert positions[coordinate - 1] == position

    def test_ordering_is_idempotent(self):
        gen = np.random.default_rng(11)
        for _ in range(50):
            d = _random_digraph_degrees(gen, int(gen.integers(1, 30)))
            sorted_d = DegreeSequence(order_positive(d).sorted_pairs)
            view = order_positive(sorted_d)
            assert view.permutation.tolist() == list(range(1, d.n + 1))

    def test_multi_pass_radix_matches_stable_lexsort(self):
        gen = np.random.default_rng(5)
        n = 70_000
        out = gen.integers(0, 40, size=n)
        inn = gen.integers(0, 40, size=n)
        d = DegreeSequence.from_arrays(out, inn)
        expected = np.lexsort((np.arange(n), -inn, -out)) + 1
        assert np.array_equal(order_positive(d).permutation, expected)
        expected = np.lexsort((np.arange(n), -out, -inn)) + 1
        assert np.array_equal(order_negative(d).permutation, expected)


class TestCorrectedConjugate:
    @pytest.mark.parametrize(
        "a, expected",
        [
            ([0, 0, 0], [0, 0, 0]),
            ([2, 2, 1], [2, 1, 2]),
            ([1, 1, 1], [2, 1, 0]),
            ([3, 2, 2, 2], [3, 3, 2, 1]),
        ],
    )
    def test_examples(self, a, expected, conjugate_oracle):
        assert corrected_conjugate(a) == expected
        assert conjugate_oracle(a) == expected

    def test_matches_definition_on_random_lists(self, conjugate_oracle):
        gen = np.random.default_rng(2010)
        for _ in range(1000):
            n = int(gen.integers(1, 51))
            a = gen.integers(0, n, size=n).tolist()
            assert corrected_conjugate(a) == conjugate_oracle(a)

    def test_rejects_negative_entries(self):
        with pytest.raises(DegreeSequenceError):
            corrected_conjugate([1, -1])


class TestSlackSequences:
    def test_three_cycle(self, three_cycle_seq):
        slack = slack_sequences(three_cycle_seq)
        assert slack.s_bar.tolist() == [0, 1, 1, 0]
        assert slack.s_ubar.tolist() == [0, 1, 1, 0]

    def test_anchored_four(self, anchored_seq):
        slack = slack_sequences(anchored_seq)
        assert slack.s_bar.tolist() == [0, 0, 1, 1, 0]
        assert slack.s_ubar.tolist() == [0, 0, 1, 1, 0]

    def test_single_arc(self):
        slack = slack_sequences(DegreeSequence([(1, 0), (0, 1)]))
        assert slack.s_bar.tolist() == [0, 0, 0]
        assert slack.s_ubar.tolist() == [0, 0, 0]

    def test_endpoints_vanish_for_realizable_sequences(self):
        gen = np.random.default_rng(3)
        for _ in range(200):
            d = _random_digraph_degrees(gen, int(gen.integers(1, 25)))
            slack = slack_sequences(d)
            assert slack.s_bar[0] == 0 and slack.s_ubar[0] == 0
            assert slack.s_bar[-1] == 0 and slack.s_ubar[-1] == 0
            assert slack.s_bar.min() >= 0 and slack.s_ubar.min() >= 0


class TestIsDigraphic:
    def test_examples(self):
        assert is_digraphic(DegreeSequence([(1, 1), (1, 1)]))
        assert not is_digraphic(DegreeSequence([(2, 0), (0, 1)]))
        assert not is_digraphic(DegreeSequence([(2, 2), (1, 1), (0, 0)]))

    def test_random_graph_sequences_are_digraphic(self):
        gen = np.random.default_rng(8)
        for _ in range(200):
            assert is_digraphic(_random_digraph_degrees(gen, int(gen.integers(1, 20))))

    def test_oversized_in_degree(self):
        assert not is_digraphic(DegreeSequence([(1, 0), (1, 0), (1, 3)]))


class TestDetectAnchors:
    def test_three_cycle(self, three_cycle_seq):
        triples = detect_anchors(three_cycle_seq)
        assert [(t.coordinates, t.k, t.l) for t in triples] == [((1, 2, 3), 1, 1)]
        assert triples[0].degree_pair == (1, 1)

    def test_four_ones_has_none(self, four_ones_seq):
        assert detect_anchors(four_ones_seq) == []

    def test_anchored_four(self, anchored_seq):
        triples = detect_anchors(anchored_seq)
        assert [(t.coordinates, t.k, t.l) for t in triples] == [((2, 3, 4), 2, 2)]

    def test_reports_original_labels(self):
        triples = detect_anchors(DegreeSequence([(2, 2), (3, 3), (2, 2), (2, 2)]))
        assert [t.as_set() for t in triples] == [frozenset({1, 3, 4})]

    def test_zero_padding_keeps_the_anchor(self):
        d = DegreeSequence([(0, 0), (3, 3), (2, 2), (0, 0), (2, 2), (2, 2)])
        triples = detect_anchors(d)
        assert [(t.coordinates, t.k, t.l) for t in triples] == [((3, 5, 6), 2, 2)]

    def test_short_sequences(self):
        assert detect_anchors(DegreeSequence([(0, 0)])) == []
        assert detect_anchors(DegreeSequence([(1, 1), (1, 1)])) == []

    def test_not_digraphic(self):
        with pytest.raises(NotDigraphicError):
            detect_anchors(DegreeSequence([(2, 2), (1, 1), (0, 0)]))


@pytest.mark.slow
class TestDetectorScaling:
    @staticmethod
    def _padded(n):
        out = np.zeros(n, dtype=np.int64)
        inn = np.zeros(n, dtype=np.int64)
        out[:4] = inn[:4] = [3, 2, 2, 2]
        return DegreeSequence.from_arrays(out, inn)

    @staticmethod
    def _timed(d):
        start = time.perf_counter()
        detect_anchors(d)
        return time.perf_counter() - start

    def _best_times(self, sequences, rounds):
        # rounds interleave the sizes; each size keeps its fastest run
        best = [float("inf")] * len(sequences)
        for d in sequences:
            detect_anchors(d)
        for _ in range(rounds):
            for i, d in enumerate(sequences):
                best[i] = min(best[i], self._timed(d))
        return best

    def test_million_vertices_under_a_second(self):
        d = self._padded(1_000_000)
        assert [t.coordinates for t in detect_anchors(d)] == [(2, 3, 4)]
        assert min(self._best_times([d], rounds=3)) < 1.0

    def test_growth_is_at_most_linear(self):
        sizes = [100_000, 200_000, 400_000, 800_000]
        times = self._best_times([self._padded(n) for n in sizes], rounds=9)
        for smaller, larger in zip(times, times[1:]):
            assert larger / smaller <= 2.5


class TestParsing:
    def test_text_with_comments_and_blanks(self):
        d = parse_degree_sequence_text("# header\n1 1\n\n1 1\n  1 1  \n")
        assert d.pairs == [(1, 1)] * 3

    def test_text_errors_carry_line_numbers(self):
        with pytest.raises(ParseError) as info:
            parse_degree_sequence_text("1 1\n1 x\n")
        assert info.value.line == 2
        assert str(info.value).startswith("line 2:")

        with pytest.raises(ParseError) as info:
            parse_degree_sequence_text("1 1\n1 1 1\n")
        assert info.value.line == 2

        with pytest.raises(ParseError) as info:
            parse_degree_sequence_text("1 1\n# c\n-1 1\n")
        assert info.value.line == 3

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_degree_sequence_text("")
        with pytest.raises(ParseError):
            parse_degree_sequence_text("# only a comment\n\n")
        with pytest.raises(ParseError):
            parse_degree_sequence_json("[]")

    def test_json(self):
        assert parse_degree_sequence_json("[[1, 1], [1, 1]]").pairs == [(1, 1), (1, 1)]
        with pytest.raises(ParseError):
            parse_degree_sequence_json("[[1, -1], [0, 1]]")
        with pytest.raises(ParseError):
            parse_degree_sequence_json('{"n": 2}')

    def test_dispatch(self, anchored_seq):
        assert parse_degree_sequence("3 3\n2 2\n2 2\n2 2\n") == anchored_seq
        as_json = "[[3, 3], [2, 2], [2, 2], [2, 2]]"
        assert parse_degree_sequence(as_json) == anchored_seq
        assert parse_degree_sequence("  \n" + as_json) == anchored_seq

    def test_degrees_beyond_int64_are_rejected_with_line(self):
        with pytest.raises(ParseError) as info:
            parse_degree_sequence_text("99999999999999999999 0\n0 1\n")
        assert info.value.line == 1
        with pytest.raises(ParseError) as info:
            parse_degree_sequence_text(f"0 0\n0 {2**63}\n")
        assert info.value.line == 2
        largest = parse_degree_sequence_text(f"{2**63 - 1} 0\n0 1\n")
        assert largest.pair(1) == (2**63 - 1, 0)

    def test_json_degrees_beyond_int64_are_rejected(self):
        with pytest.raises(ParseError):
            parse_degree_sequence_json("[[99999999999999999999, 0], [0, 1]]")


class TestHugeDegrees:
    def test_constructor_rejects_values_beyond_int64(self):
        with pytest.raises(DegreeSequenceError):
            DegreeSequence([(2**63, 0), (0, 1)])
        with pytest.raises(DegreeSequenceError):
            DegreeSequence.from_arrays([2**64, 0], [0, 1])

    def test_arc_counts_are_exact(self):
        big = 2**63 - 1
        d = DegreeSequence([(big, 0), (big, 0), (0, big)])
        assert d.arc_counts == (2 * big, big)

    @pytest.mark.parametrize(
        "pairs",
        [
            [(5_000_000_000, 0), (0, 5_000_000_000)],
            [(2**63 - 1, 0), (0, 2**63 - 1)],
            [(2**40, 2**40), (1, 1), (0, 0)],
        ],
    )
    def test_not_digraphic_and_no_anchors(self, pairs):
        d = DegreeSequence(pairs)
        assert not is_digraphic(d)
        with pytest.raises(NotDigraphicError):
            detect_anchors(d)

    def test_orderings_fall_back_to_exact_sort(self):
        big = 2**63 - 1
        d = DegreeSequence([(1, big), (big, 0), (big, 2), (0, 0)])
        assert order_positive(d).permutation.tolist() == [3, 2, 1, 4]
        assert order_negative(d).permutation.tolist() == [1, 3, 2, 4]

    def test_slack_sequences_stay_exact(self):
        big = 2**63 - 1
        slack = slack_sequences(DegreeSequence([(big, 0), (0, big)]))
        assert slack.s_bar.tolist() == [0, -big + 1, -big + 1]
        assert slack.s_ubar.tolist() == [0, -big + 1, -big + 1]
