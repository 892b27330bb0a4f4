from __future__ import annotations

import networkx as nx
import pytest
from networkx.algorithms import isomorphism

from conftest import to_nx
from sierpinski.cayley import (
    AffineElement,
    CayleyPresentation,
    affine_group,
    cayley_graph,
    classify_connection_set,
    complement_subgroup,
    connection_constant,
    copy_parts,
    coset_structure_check,
    cyclic_group,
    elementary_abelian_group,
    find_copies,
    frobenius_complement_check,
    frobenius_kernel,
    is_elementary_abelian,
    kernel_subgroup,
    sp1_enumerate,
    sp1_graph,
    spp2_presentation,
    strongly_partitioned_check,
)
from sierpinski.errors import InvalidConnectionSet, InvalidParameter, NotInSP
from sierpinski.graph import Graph, complete_graph, cycle_graph, path_graph, sierpinski, sierpinski_pp
from sierpinski.symmetry import are_isomorphic, is_vertex_transitive


def nx_induced_copies(g: Graph, delta: Graph) -> set:
    gm = isomorphism.GraphMatcher(to_nx(g), to_nx(delta))
    return {frozenset(m) for m in gm.subgraph_isomorphisms_iter()}


def nx_subgraph_copies(g: Graph, delta: Graph) -> set:
    gm = isomorphism.GraphMatcher(to_nx(g), to_nx(delta))
    out = set()
    for m in gm.subgraph_monomorphisms_iter():
        inv = {b: a for a, b in m.items()}
        out.add(frozenset(frozenset((inv[u], inv[v])) for u, v in delta.edges))
    return out


class TestGroups:
    def test_affine_orders(self):
        for q, order in [(2, 2), (3, 6), (4, 12), (5, 20), (9, 72)]:
            g, _ = affine_group(q)
            assert g.order == order and g.is_associative()

    def test_affine_3_is_s3(self):
        g, _ = affine_group(3)
        assert not g.is_abelian()

    def test_affine_law(self):
        g, F = affine_group(5)
        a, b = g.index(AffineElement(2, 3)), g.index(AffineElement(4, 1))
        assert g.elements[g.mul(a, b)] == AffineElement(F.mul(2, 4), F.add(F.mul(2, 1), 3))

    def test_affine_structure(self):
        for q in [3, 4, 5, 7, 8, 9]:
            g, _ = affine_group(q)
            h, n = complement_subgroup(g), kernel_subgroup(g)
            assert frobenius_complement_check(g, h)
            assert frobenius_kernel(g, h) == n
            assert is_elementary_abelian(g, n)

    def test_cyclic_not_frobenius(self):
        z6 = cyclic_group(6)
        assert not frobenius_complement_check(z6, {0, 3})

    def test_s3_two_element_subgroup(self):
        g, _ = affine_group(3)
        h = next(frozenset({g.identity, x}) for x in range(6) if x != g.identity and g.mul(x, x) == g.identity)
        assert frobenius_complement_check(g, h)

    def test_not_subgroup(self):
        with pytest.raises(InvalidParameter):
            frobenius_complement_check(cyclic_group(6), {0, 1})

    def test_gf4_conjugation_scan(self):
        g, _ = affine_group(4)
        h = complement_subgroup(g)
        for x in range(g.order):
            if x not in h:
                assert {g.conj(y, x) for y in h} & h == {g.identity}


class TestCayleyGraph:
    def test_c6(self):
        z6 = cyclic_group(6)
        assert are_isomorphic(cayley_graph(CayleyPresentation(z6, frozenset({1, 5}))), cycle_graph(6))

    def test_k4(self):
        v4 = elementary_abelian_group(2, 2)
        assert are_isomorphic(cayley_graph(CayleyPresentation(v4, frozenset({1, 2, 3}))), complete_graph(4))

    def test_identity_rejected(self):
        with pytest.raises(InvalidConnectionSet):
            CayleyPresentation(cyclic_group(6), frozenset({0, 1, 5}))

    def test_inverse_closure(self):
        with pytest.raises(InvalidConnectionSet):
            CayleyPresentation(cyclic_group(6), frozenset({1}))

    def test_spp2_q4_shape(self):
        g = cayley_graph(spp2_presentation(4))
        assert g.n == 12 and g.is_regular(3)

    @pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
    def test_spp2_isomorphism(self, q):
        assert are_isomorphic(cayley_graph(spp2_presentation(q)), sierpinski_pp(2, q - 1))

    def test_spp2_against_networkx(self):
        assert nx.is_isomorphic(to_nx(cayley_graph(spp2_presentation(5))), to_nx(sierpinski_pp(2, 4)))

    def test_spp2_q2(self):
        with pytest.raises(InvalidParameter):
            spp2_presentation(2)

    @pytest.mark.parametrize("q", [3, 4, 5, 7])
    def test_cayley_graphs_are_transitive(self, q):
        assert is_vertex_transitive(cayley_graph(spp2_presentation(q)))

    def test_presentation_dict(self):
        d = spp2_presentation(4).as_dict()
        assert d["order"] == 12 and len(d["connection_set"]) == 3 and len(d["table"]) == 12


class TestFrobeniusStructure:
    @pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
    def test_structure(self, q):
        pres = spp2_presentation(q)
        g = pres.group
        h = complement_subgroup(g)
        fs = classify_connection_set(pres, h)
        assert len(h) == q - 1 and fs.frobenius and fs.kernel_elementary_abelian
        assert len(fs.kernel) == q
        assert pres.connection == (h - {g.identity}) | {fs.involution}
        assert g.mul(fs.involution, fs.involution) == g.identity
        assert fs.case == ("kernel" if q % 2 == 0 else "conjugate")
        parts = g.right_cosets(h)
        assert coset_structure_check(pres, parts)


class TestPartitions:
    def test_find_copies_counts(self):
        g = sierpinski_pp(2, 3)
        assert {vs for vs, _ in find_copies(g, complete_graph(3))} == nx_induced_copies(g, complete_graph(3))

    @pytest.mark.parametrize(
        "g,delta",
        [
            (sierpinski_pp(2, 3), path_graph(3)),
            (sierpinski(2, 3), cycle_graph(3)),
            (sierpinski_pp(2, 4), path_graph(4)),
            (complete_graph(5), cycle_graph(4)),
        ],
    )
    def test_find_copies_vs_networkx(self, g, delta):
        ours_ind = {vs for vs, _ in find_copies(g, delta, induced=True)}
        assert ours_ind == nx_induced_copies(g, delta)
        ours_sub = [es for _, es in find_copies(g, delta, induced=False)]
        assert len(ours_sub) == len(set(ours_sub))
        assert set(ours_sub) == nx_subgraph_copies(g, delta)

    @pytest.mark.parametrize("n,k", [(2, 3), (2, 4), (2, 5), (3, 3)])
    def test_spp_strongly_partitioned(self, n, k):
        g = sierpinski_pp(n, k)
        parts = copy_parts(g)
        assert strongly_partitioned_check(g, sierpinski(n - 1, k), parts)
        assert strongly_partitioned_check(g, sierpinski(n - 1, k), parts, induced=False)
        assert connection_constant(g, parts) == 1

    def test_c6_not_strongly_partitioned(self):
        g = sierpinski_pp(2, 2)
        assert not strongly_partitioned_check(g, path_graph(2), copy_parts(g))

    def test_k4_matching(self):
        assert not strongly_partitioned_check(complete_graph(4), path_graph(2), [{0, 1}, {2, 3}])

    def test_connection_constants(self):
        assert connection_constant(sierpinski_pp(2, 4), copy_parts(sierpinski_pp(2, 4))) == 1
        assert connection_constant(complete_graph(6), [{0, 1, 2}, {3, 4, 5}]) == 9
        assert connection_constant(path_graph(4), [{0, 1}, {2, 3}]) == 1

    def test_nonconstant(self):
        with pytest.raises(NotInSP):
            connection_constant(path_graph(6), [{0, 1}, {2, 3}, {4, 5}])

    def test_bad_partition(self):
        with pytest.raises(InvalidParameter):
            connection_constant(path_graph(4), [{0, 1}, {1, 2, 3}])
        with pytest.raises(InvalidParameter):
            strongly_partitioned_check(path_graph(4), path_graph(3), [{0, 1}, {2, 3}])

    def test_coset_checks(self):
        pres = spp2_presentation(5)
        g = pres.group
        h = complement_subgroup(g)
        assert coset_structure_check(pres, g.right_cosets(h))
        z6 = CayleyPresentation(cyclic_group(6), frozenset({1, 5}))
        assert not coset_structure_check(z6, [{0, 1}, {2, 3}, {4, 5}])
        assert not strongly_partitioned_check(cayley_graph(z6), path_graph(2), [{0, 1}, {2, 3}, {4, 5}])


class TestSP1:
    def test_c4(self):
        classes = sp1_enumerate(cycle_graph(4))
        assert len(classes) == 7
        assert sum(c.cayley is True for c in classes) == 1
        assert all(c.order == 20 for c in classes)

    def test_c4_strict_members(self):
        classes = sp1_enumerate(cycle_graph(4), strict=True)
        assert len(classes) == 7

    def test_k3(self):
        classes = sp1_enumerate(complete_graph(3))
        assert all(c.order == 12 for c in classes)
        assert any(are_isomorphic(c.representative, sierpinski_pp(2, 3)) for c in classes)

    def test_k2(self):
        classes = sp1_enumerate(path_graph(2))
        assert len(classes) == 1 and classes[0].order == 6
        assert are_isomorphic(classes[0].representative, cycle_graph(6))

    def test_graph_shape(self):
        g = sp1_graph(cycle_graph(4), [tuple(range(4))] * 5)
        assert g.n == 20 and g.is_regular(3)
        parts = [set(range(i * 4, i * 4 + 4)) for i in range(5)]
        assert connection_constant(g, parts) == 1

    def test_non_regular_delta(self):
        with pytest.raises(InvalidParameter):
            sp1_enumerate(path_graph(3))

    def test_deterministic(self):
        a = [c.as_dict() for c in sp1_enumerate(cycle_graph(4))]
        assert a == [c.as_dict() for c in sp1_enumerate(cycle_graph(4))]
