from __future__ import annotations

from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import to_nx
from sierpinski.errors import InvalidParameter, MissingLabels, ResourceLimit
from sierpinski.graph import (
    Graph,
    Midpoint,
    complete_graph,
    cycle_graph,
    extreme_vertices,
    is_midpoint,
    line_graph,
    path_graph,
    sierpinski,
    sierpinski_pp,
    subdivision,
    word_index,
)


def rule_adjacent(u, v) -> bool:
    """Direct reading of the word rule: shared prefix, then swapped letters repeated."""
    n = len(u)
    for t in range(n):
        if u[:t] == v[:t] and u[t] != v[t]:
            return all(u[j] == v[t] and v[j] == u[t] for j in range(t + 1, n))
    return False


def rule_edges(n, k):
    ws = list(product(range(1, k + 1), repeat=n))
    return {frozenset((u, v)) for u, v in combinations(ws, 2) if rule_adjacent(u, v)}


def labelled_edges(g):
    return {frozenset((g.labels[u], g.labels[v])) for u, v in g.edges}


class TestGraphType:
    def test_rejects_self_loop(self):
        with pytest.raises(InvalidParameter):
            Graph(2, ((0, 0),))

    def test_rejects_duplicate(self):
        with pytest.raises(InvalidParameter):
            Graph(2, ((0, 1), (1, 0)))

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidParameter):
            Graph(2, ((0, 2),))

    def test_rejects_repeated_labels(self):
        with pytest.raises(InvalidParameter):
            Graph(2, ((0, 1),), ("a", "a"))

    def test_edges_normalised(self):
        g = Graph(3, ((2, 1), (1, 0)))
        assert g.edges == ((0, 1), (1, 2))

    def test_relabel_is_isomorphic(self):
        g = sierpinski(2, 3)
        h = g.relabel([8 - i for i in range(9)])
        assert nx.is_isomorphic(to_nx(g), to_nx(h))


class TestSmallFamilies:
    def test_complete_singleton(self):
        g = complete_graph(1)
        assert (g.n, g.m) == (1, 0)

    def test_complete_four(self):
        assert (complete_graph(4).n, complete_graph(4).m) == (4, 6)

    def test_complete_zero_rejected(self):
        with pytest.raises(InvalidParameter):
            complete_graph(0)

    def test_path_degrees(self):
        assert path_graph(4).degrees() == [1, 2, 2, 1]
        assert path_graph(2).edges == ((0, 1),)

    def test_cycle(self):
        g = cycle_graph(6)
        assert g.m == 6 and g.is_regular(2)
        with pytest.raises(InvalidParameter):
            cycle_graph(2)

    def test_k3_is_c3(self):
        assert nx.is_isomorphic(to_nx(complete_graph(3)), to_nx(cycle_graph(3)))


class TestSierpinski:
    @pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(1, 6) if k**n <= 700])
    def test_matches_rule_oracle(self, n, k):
        assert labelled_edges(sierpinski(n, k)) == rule_edges(n, k)

    def test_s1k_is_complete(self):
        assert nx.is_isomorphic(to_nx(sierpinski(1, 5)), to_nx(complete_graph(5)))

    def test_s23_counts(self):
        g = sierpinski(2, 3)
        assert (g.n, g.m) == (9, 12)

    def test_s33_vertex_111(self):
        g = sierpinski(3, 3)
        nbrs = {g.labels[w] for w in g.adj[g.index_of((1, 1, 1))]}
        assert nbrs == {(1, 1, 2), (1, 1, 3)}

    @pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 5) for k in range(2, 6)])
    def test_degree_sequence_and_edges(self, n, k):
        g = sierpinski(n, k)
        degs = g.degrees()
        assert degs.count(k - 1) == k and degs.count(k) == k**n - k
        assert g.m == (k ** (n + 1) - k) // 2

    def test_budget(self):
        with pytest.raises(ResourceLimit):
            sierpinski(3, 5, budget=100)

    def test_budget_env(self, monkeypatch):
        monkeypatch.setenv("SIERPINSKI_BUDGET", "50")
        with pytest.raises(ResourceLimit):
            sierpinski(2, 8)

    def test_word_index_is_lexicographic(self):
        g = sierpinski(3, 4)
        assert all(word_index(w, 4) == i for i, w in enumerate(g.labels))


class TestSierpinskiPP:
    def test_n1_is_complete(self):
        assert nx.is_isomorphic(to_nx(sierpinski_pp(1, 3)), to_nx(complete_graph(4)))

    def test_s23(self):
        g = sierpinski_pp(2, 3)
        assert (g.n, g.m) == (12, 18) and g.is_regular(3)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_k2_is_cycle(self, n):
        assert nx.is_isomorphic(to_nx(sierpinski_pp(n, 2)), to_nx(cycle_graph(3 * 2 ** (n - 1))))

    @pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(2, 6)])
    def test_regular_with_expected_size(self, n, k):
        g = sierpinski_pp(n, k)
        assert g.n == (k + 1) * k ** (n - 1)
        assert g.is_regular(k)
        assert g.m == (k + 1) * k**n // 2

    @pytest.mark.parametrize("n,k", [(2, 3), (3, 3), (3, 4)])
    def test_copies_and_connectors(self, n, k):
        g = sierpinski_pp(n, k)
        copies = [[v for v, w in enumerate(g.labels) if w[0] == c] for c in range(k + 1)]
        for c, vs in enumerate(copies):
            sub = g.induced_subgraph(vs)
            assert nx.is_isomorphic(to_nx(sub), to_nx(sierpinski(n - 1, k)))
        between = [(g.labels[u], g.labels[v]) for u, v in g.edges if g.labels[u][0] != g.labels[v][0]]
        assert len(between) == k * (k + 1) // 2
        pairs = {frozenset((a[0], b[0])) for a, b in between}
        assert len(pairs) == len(between)
        for a, b in between:
            assert len(set(a[1:])) == 1 and len(set(b[1:])) == 1

    def test_copy_zero_connector(self):
        g = sierpinski_pp(3, 3)
        assert g.has_edge(g.index_of((0, 2, 2)), g.index_of((2, 2, 2)))


class TestTransforms:
    def test_line_of_p3(self):
        g = line_graph(path_graph(3))
        assert (g.n, g.m) == (2, 1)

    def test_line_of_k4_is_octahedron(self):
        g = line_graph(complete_graph(4))
        assert g.n == 6 and g.is_regular(4)
        assert nx.is_isomorphic(to_nx(g), nx.octahedral_graph())

    @pytest.mark.parametrize("m", [3, 5, 8])
    def test_cycle_self_line(self, m):
        assert nx.is_isomorphic(to_nx(line_graph(cycle_graph(m))), to_nx(cycle_graph(m)))

    def test_subdivision_small(self):
        assert nx.is_isomorphic(to_nx(subdivision(path_graph(2))), to_nx(path_graph(3)))
        assert nx.is_isomorphic(to_nx(subdivision(complete_graph(3))), to_nx(cycle_graph(6)))

    def test_subdivision_flags_new_vertices(self):
        g = subdivision(sierpinski_pp(1, 3))
        new = [v for v in range(g.n) if is_midpoint(g.labels[v])]
        assert new == list(range(4, 10))
        assert g.labels[4] == Midpoint((0,), (1,))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 8), st.data())
    def test_line_graph_matches_networkx(self, n, data):
        pairs = list(combinations(range(n), 2))
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        g = Graph(n, tuple(edges))
        assert nx.is_isomorphic(to_nx(line_graph(g)), nx.line_graph(to_nx(g)))
        s = subdivision(g)
        assert (s.n, s.m) == (n + len(edges), 2 * len(edges))


class TestExtremeVertices:
    def test_s23(self):
        g = sierpinski(2, 3)
        assert [g.labels[v] for v in extreme_vertices(g)] == [(1, 1), (2, 2), (3, 3)]

    def test_s1k(self):
        assert extreme_vertices(sierpinski(1, 4)) == [0, 1, 2, 3]

    def test_degrees(self):
        g = sierpinski(3, 3)
        assert [g.degree(v) for v in extreme_vertices(g)] == [2, 2, 2]

    def test_unlabelled(self):
        with pytest.raises(MissingLabels):
            extreme_vertices(complete_graph(3))
