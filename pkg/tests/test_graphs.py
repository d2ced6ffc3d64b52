import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_graphs, brute_isomorphic, connected, graphs, random_graph
from pairwalk import graph6
from pairwalk.algebra import hamiltonian
from pairwalk.canon import (
    canonical_form,
    canonical_graph,
    enumerate_connected,
    enumerate_graphs,
    enumerate_trees,
    is_isomorphic,
)
from pairwalk.graphs import (
    Graph,
    ParameterError,
    automorphisms,
    bipartition,
    build_named,
    cartesian_product,
    complement,
    complete,
    cycle,
    disjoint_union,
    empty,
    figure1,
    figure3,
    figure4,
    join,
    path,
    star,
    twins,
)


class TestGraph:
    def test_from_edges_and_queries(self):
        g = Graph.from_edges(4, [(0, 1), (2, 1), (3, 2)])
        assert g.edges() == [(0, 1), (1, 2), (2, 3)]
        assert g.degrees() == [1, 2, 2, 1]
        assert g.neighbors(1) == [0, 2]
        assert g.has_edge(1, 0) and not g.has_edge(0, 2)

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 4)], [(-1, 2)]])
    def test_bad_edges_rejected(self, edges):
        with pytest.raises(ParameterError):
            Graph.from_edges(4, edges)

    def test_asymmetric_adjacency_rejected(self):
        with pytest.raises(ParameterError):
            Graph(2, (0b10, 0b00))

    def test_from_matrix_round_trip(self):
        g = figure1()
        assert Graph.from_matrix(g.adjacency_matrix()) == g

    def test_relabel_preserves_edge_count(self):
        g = figure3()
        h = g.relabel([5, 4, 3, 2, 1, 0])
        assert h.num_edges == g.num_edges
        assert h.has_edge(5, 4)  # image of edge (0, 1)

    def test_connectivity(self):
        assert path(5).is_connected()
        assert not disjoint_union(path(2), path(2)).is_connected()


class TestNamed:
    def test_path3(self):
        assert build_named("path", 3).edges() == [(0, 1), (1, 2)]

    def test_triangle(self):
        assert build_named("cycle", 3).degrees() == [2, 2, 2]

    def test_figure1_laplacian(self):
        expected = np.array([
            [2, 0, 0, -1, -1, 0],
            [0, 2, 0, 0, -1, -1],
            [0, 0, 2, 0, -1, -1],
            [-1, 0, 0, 2, 0, -1],
            [-1, -1, -1, 0, 3, 0],
            [0, -1, -1, -1, 0, 3],
        ])
        np.testing.assert_array_equal(hamiltonian(build_named("figure1"), "laplacian"), expected)

    def test_unknown_family(self):
        with pytest.raises(ParameterError):
            build_named("petersen")

    def test_wrong_arity(self):
        with pytest.raises(ParameterError):
            build_named("cycle")

    def test_cycle_needs_three(self):
        with pytest.raises(ParameterError):
            cycle(2)

    def test_double_star_shape(self):
        g = build_named("double_star", 2, 3)
        assert g.n == 7 and g.has_edge(0, 1)
        assert sorted(g.degrees()) == [1, 1, 1, 1, 1, 3, 4]


class TestOperations:
    def test_complement_of_k4(self):
        assert complement(complete(4)) == empty(4)

    def test_complement_of_figure3_is_figure4(self):
        assert complement(figure3()) == figure4()
        assert figure4().edges() == [(0, 3), (0, 4), (0, 5), (1, 2), (1, 5), (2, 4), (2, 5), (3, 4)]

    def test_complement_involution(self, rng):
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 9))
            assert complement(complement(g)) == g

    def test_join_small(self):
        assert join(empty(1), empty(1)) == complete(2)
        assert is_isomorphic(join(empty(2), empty(2)), cycle(4))

    def test_join_complement_identity(self, rng):
        for _ in range(30):
            g = random_graph(rng, rng.randint(1, 5))
            h = random_graph(rng, rng.randint(1, 5))
            assert complement(join(g, h)) == disjoint_union(complement(g), complement(h))

    def test_product_of_p2_p3_is_figure3(self):
        prod = cartesian_product(path(2), path(3))
        assert brute_isomorphic(prod, figure3())

    def test_product_identity_element(self, rng):
        for _ in range(10):
            h = random_graph(rng, rng.randint(1, 6))
            assert cartesian_product(empty(1), h) == h

    def test_product_laplacian_is_kronecker_sum(self, rng):
        for _ in range(20):
            g = random_graph(rng, rng.randint(1, 4))
            h = random_graph(rng, rng.randint(1, 4))
            lg, lh = hamiltonian(g, "laplacian"), hamiltonian(h, "laplacian")
            expected = np.kron(lg, np.eye(h.n, dtype=int)) + np.kron(np.eye(g.n, dtype=int), lh)
            np.testing.assert_array_equal(hamiltonian(cartesian_product(g, h), "laplacian"), expected)


class TestPredicates:
    def test_twins_examples(self):
        assert twins(path(3), 0, 2)
        assert not twins(path(4), 0, 3)
        assert all(twins(star(4), a, b) for a, b in itertools.combinations(range(1, 5), 2))

    def test_twins_same_vertex_rejected(self):
        with pytest.raises(ParameterError):
            twins(path(3), 1, 1)

    def test_bipartition_examples(self):
        assert bipartition(cycle(4)) == ([0, 2], [1, 3])
        assert bipartition(cycle(3)) is None
        parts = bipartition(path(6))
        assert sorted(map(len, parts)) == [3, 3]

    def test_automorphism_group_sizes(self):
        assert automorphisms(path(3)) == [(0, 1, 2), (2, 1, 0)]
        assert len(automorphisms(cycle(4))) == 8

    def test_figure1_automorphisms_match_brute_force(self):
        g = figure1()
        edges = set(g.edges())
        brute = [p for p in itertools.permutations(range(6))
                 if all(tuple(sorted((p[u], p[v]))) in edges for u, v in edges)]
        assert automorphisms(g) == sorted(brute)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_automorphisms_form_a_group(self, n):
        for g in all_graphs(n):
            group = set(automorphisms(g))
            assert tuple(range(n)) in group
            for p in group:
                inv = tuple(sorted(range(n), key=lambda i: p[i]))
                assert inv in group
                for q in group:
                    assert tuple(p[q[i]] for i in range(n)) in group

    @pytest.mark.parametrize("n", range(2, 7))
    def test_twins_iff_transposition_automorphism(self, n):
        for g in all_graphs(n):
            autos = set(automorphisms(g))
            for a, b in itertools.combinations(range(n), 2):
                swap = list(range(n))
                swap[a], swap[b] = b, a
                assert twins(g, a, b) == (tuple(swap) in autos)


class TestGraph6:
    def test_k2(self):
        assert graph6.encode(complete(2)) == "A_"

    def test_reference_strings(self):
        # strings produced by nauty's geng / networkx for these graphs
        assert graph6.encode(path(3)) == "Bg"
        assert graph6.encode(cycle(4)) == "Cl"
        assert graph6.encode(complete(5)) == "D~{"
        assert graph6.encode(empty(0)) == "?"

    @given(graphs(min_n=0, max_n=12))
    def test_round_trip(self, g):
        assert graph6.decode(graph6.encode(g)) == g

    def test_decode_zero_vertices(self):
        assert graph6.decode("?").n == 0

    @pytest.mark.parametrize("bad", ["", "A", "A__", "Bh", "A\x7f", ">>graph6<<", "~??@"])
    def test_malformed(self, bad):
        with pytest.raises(graph6.Graph6Error):
            graph6.decode(bad)

    def test_header_accepted(self):
        assert graph6.decode(">>graph6<<A_") == complete(2)

    def test_read_lines_reports_line_numbers(self):
        items = list(graph6.read_lines(["A_\n", "\n", "oops\n", "Bg\n"]))
        assert [i for i, _ in items] == [1, 3, 4]
        assert isinstance(items[1][1], graph6.Graph6Error)
        assert items[2][1] == path(3)

    def test_too_large(self):
        with pytest.raises(graph6.Graph6Error):
            graph6.encode(empty(63))


class TestCanonical:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_agrees_with_brute_force_isomorphism(self, n, rng):
        pool = [random_graph(rng, n) for _ in range(25)]
        for g, h in itertools.combinations(pool, 2):
            assert (canonical_form(g) == canonical_form(h)) == brute_isomorphic(g, h)

    def test_invariant_under_relabeling(self, rng):
        for _ in range(20):
            g = random_graph(rng, rng.randint(2, 10))
            form = canonical_form(g)
            for _ in range(5):
                perm = list(range(g.n))
                rng.shuffle(perm)
                assert canonical_form(g.relabel(perm)) == form

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=9), st.randoms(use_true_random=False))
    def test_canonical_graph_is_isomorphic(self, g, r):
        c = canonical_graph(g)
        assert canonical_form(c) == canonical_form(g)
        perm = list(range(g.n))
        r.shuffle(perm)
        assert canonical_graph(g.relabel(perm)) == c

    def test_distinguishes_cospectral_pair(self):
        # K_{1,4} and C_4 + K_1 share an adjacency spectrum
        assert not is_isomorphic(star(4), disjoint_union(cycle(4), empty(1)))


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
    def test_all_graph_counts(self, n, count):
        assert len(list(enumerate_graphs(n))) == count

    @pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)])
    def test_connected_counts(self, n, count):
        gs = list(enumerate_connected(n))
        assert len(gs) == count
        assert all(g.is_connected() for g in gs)

    @pytest.mark.slow
    def test_connected_count_n8(self):
        assert len(list(enumerate_connected(8))) == 11117

    def test_n4_against_labeled_brute_force(self):
        pairs = list(itertools.combinations(range(4), 2))
        reps: list[Graph] = []
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(4, [e for i, e in enumerate(pairs) if mask >> i & 1])
            if g.is_connected() and not any(brute_isomorphic(g, r) for r in reps):
                reps.append(g)
        assert len(reps) == 6 == len(connected(4))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_pairwise_non_isomorphic(self, n):
        forms = [canonical_form(g) for g in all_graphs(n)]
        assert len(set(forms)) == len(forms)

    @pytest.mark.parametrize("n,count", [(1, 1), (4, 2), (6, 6), (8, 23), (10, 106), (11, 235)])
    def test_tree_counts(self, n, count):
        trees = list(enumerate_trees(n))
        assert len(trees) == count
        assert all(t.is_connected() and t.num_edges == n - 1 for t in trees)

    def test_trees_match_filtered_connected_graphs(self):
        for n in range(1, 8):
            filtered = {canonical_form(g) for g in connected(n) if g.num_edges == n - 1}
            assert {canonical_form(t) for t in enumerate_trees(n)} == filtered

    def test_bounds(self):
        with pytest.raises(ValueError):
            next(enumerate_connected(10))
        with pytest.raises(ValueError):
            next(enumerate_trees(17))
