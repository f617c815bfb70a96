import numpy as np
import pytest

from vqalab import (
    Graph,
    GraphParseError,
    cut_value,
    maxcut_bruteforce,
    maxcut_greedy,
    parse_graph,
    random_graph,
)


class TestParseGraph:
    def test_smallest_valid_graph(self):
        g = parse_graph("2\n1 2")
        assert g.d == 2
        assert g.edge_count == 1

    def test_triangle(self):
        g = parse_graph("3\n1 2\n2 3\n1 3")
        assert g.d == 3
        assert g.edge_count == 3
        assert np.array_equal(g.adjacency, np.ones((3, 3)) - np.eye(3))

    def test_comments_and_blank_lines_ignored(self):
        g = parse_graph("# a triangle\n3\n\n1 2\n# middle\n2 3\n1 3\n")
        assert g.edge_count == 3

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("2\n1 1", "self-loop"),
            ("2\n1 3", "outside"),
            ("2\n1 2\n1 2", "duplicate"),
            ("2\nx y", "non-integer"),
            ("2\n1 2 3", "expected 'u v'"),
            ("2", "no edges"),
            ("", "empty"),
        ],
    )
    def test_malformed_documents(self, text, fragment):
        with pytest.raises(GraphParseError, match=fragment):
            parse_graph(text)

    def test_error_names_line_number(self):
        with pytest.raises(GraphParseError, match="line 3"):
            parse_graph("3\n1 2\n2 2")


class TestGraphInvariants:
    def test_rejects_asymmetric(self):
        a = np.zeros((2, 2), dtype=int)
        a[0, 1] = 1
        with pytest.raises(ValueError, match="symmetric"):
            Graph(a)

    def test_rejects_diagonal(self):
        a = np.eye(2, dtype=int)
        with pytest.raises(ValueError, match="diagonal"):
            Graph(a)

    def test_rejects_edgeless(self):
        with pytest.raises(ValueError, match="at least one edge"):
            Graph(np.zeros((3, 3), dtype=int))


class TestCutValue:
    def test_k3_hand_count(self, k3):
        # edges (1,3) and (2,3) cross
        assert cut_value(k3, [1, 1, -1]) == 2

    def test_all_equal_assignment_cuts_nothing(self, k3):
        assert cut_value(k3, [1, 1, 1]) == 0
        assert cut_value(k3, [-1, -1, -1]) == 0

    def test_single_edge(self, single_edge):
        assert cut_value(single_edge, [1, -1]) == 1

    def test_dimension_mismatch(self, k3):
        with pytest.raises(ValueError, match="length"):
            cut_value(k3, [1, -1])


class TestBruteforce:
    def test_single_edge(self, single_edge):
        value, witness = maxcut_bruteforce(single_edge)
        assert value == 1
        assert cut_value(single_edge, witness) == 1

    def test_k3(self, k3):
        value, _ = maxcut_bruteforce(k3)
        assert value == 2

    def test_c5(self, c5):
        value, _ = maxcut_bruteforce(c5)
        assert value == 4

    def test_limit_refusal(self, k3):
        with pytest.raises(ValueError, match="exhaustive limit"):
            maxcut_bruteforce(k3, limit=2)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_naive_enumeration(self, seed):
        from itertools import product

        g = random_graph(6, 0.5, seed)
        naive = max(cut_value(g, np.array(s)) for s in product([1, -1], repeat=6))
        assert maxcut_bruteforce(g)[0] == naive


class TestGreedy:
    def test_single_edge_any_seed(self, single_edge):
        for seed in range(10):
            value, witness, _ = maxcut_greedy(single_edge, seed)
            assert value == 1

    def test_k3_any_seed(self, k3):
        for seed in range(10):
            value, _, _ = maxcut_greedy(k3, seed)
            assert value == 2

    @pytest.mark.parametrize("seed", range(10))
    def test_half_edges_guarantee_and_local_optimality(self, seed):
        g = random_graph(10, 0.4, seed)
        value, witness, _ = maxcut_greedy(g, seed)
        assert value >= -(-g.edge_count // 2)  # ceil(|E|/2)
        assert value == cut_value(g, witness)
        # single-flip local optimum: no flip strictly improves
        for i in range(g.d):
            flipped = witness.copy()
            flipped[i] = -flipped[i]
            assert cut_value(g, flipped) <= value

    def test_deterministic_given_seed(self):
        g = random_graph(12, 0.3, 5)
        v1, w1, f1 = maxcut_greedy(g, 42)
        v2, w2, f2 = maxcut_greedy(g, 42)
        assert v1 == v2 and f1 == f2 and np.array_equal(w1, w2)


class TestRandomGraph:
    def test_always_has_an_edge(self):
        for seed in range(20):
            g = random_graph(5, 0.01, seed)
            assert g.edge_count >= 1

    def test_deterministic(self):
        a = random_graph(8, 0.5, 3)
        b = random_graph(8, 0.5, 3)
        assert np.array_equal(a.adjacency, b.adjacency)
