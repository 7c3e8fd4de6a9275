from itertools import permutations

import pytest

from edgeham.core import (
    EdgeSeq,
    Graph,
    build_graph,
    build_hypergraph,
    classify_types,
    decompose_groups,
    des_violation,
    DesSolution,
    insertion_slot,
    line_graph,
    normalize_edge_path,
    trivial_edge_ham,
    validate_des,
    validate_edge_sequence,
)
from edgeham.errors import (
    DuplicateEdgeError,
    NoLargeGroupError,
    NotAHittingSetError,
    NotAPermutationError,
    SelfLoopError,
    VertexOutOfRangeError,
)
from edgeham.oracle import solve_edge_ham_exact

from helpers import random_graph


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


class TestBuildGraph:
    def test_p3(self):
        g = build_graph(3, [(0, 1), (1, 2)])
        assert g.n == 3 and g.m == 2

    def test_c4(self):
        g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert g.m == 4
        assert g.edges[3] == (0, 3)  # pairs are stored normalized

    def test_duplicate_either_orientation(self):
        with pytest.raises(DuplicateEdgeError):
            build_graph(2, [(0, 1), (1, 0)])

    def test_self_loop(self):
        with pytest.raises(SelfLoopError):
            build_graph(2, [(1, 1)])

    def test_out_of_range(self):
        with pytest.raises(VertexOutOfRangeError):
            build_graph(2, [(0, 2)])


class TestLineGraph:
    def test_path_becomes_single_edge(self):
        assert line_graph(path_graph(3)).edges == ((0, 1),)

    def test_star_becomes_complete(self):
        lg = line_graph(build_graph(4, [(0, 1), (0, 2), (0, 3)]))
        assert set(lg.edges) == {(0, 1), (0, 2), (1, 2)}

    def test_cycle_four_maps_to_itself(self):
        # expected value enumerated by hand from shared endpoints
        lg = line_graph(cycle_graph(4))
        assert set(lg.edges) == {(0, 1), (1, 2), (2, 3), (0, 3)}

    def test_vertex_count_is_edge_count(self):
        for seed in range(10):
            g = random_graph(seed)
            assert line_graph(g).n == g.m

    def test_hypergraph_with_shared_vertex_is_complete(self):
        h = build_hypergraph(5, [{0, 1}, {0, 2, 3}, {0, 4}, {0, 1, 4}])
        lg = line_graph(h)
        assert lg.m == lg.n * (lg.n - 1) // 2


class TestValidateEdgeSequence:
    def test_path_in_order(self):
        g = path_graph(4)
        assert validate_edge_sequence(g, EdgeSeq((0, 1, 2), "path"))

    def test_path_graph_has_no_edge_cycle(self):
        g = path_graph(4)
        for perm in permutations(range(3)):
            assert not validate_edge_sequence(g, EdgeSeq(perm, "cycle"))

    def test_disjoint_edges_fail(self):
        g = build_graph(4, [(0, 1), (2, 3)])
        assert not validate_edge_sequence(g, EdgeSeq((0, 1), "path"))

    def test_not_a_permutation(self):
        g = path_graph(3)
        with pytest.raises(NotAPermutationError):
            validate_edge_sequence(g, EdgeSeq((0, 0), "path"))

    def test_degenerate_conventions(self):
        lonely = build_graph(2, [(0, 1)])
        assert validate_edge_sequence(lonely, EdgeSeq((0,), "path"))
        assert validate_edge_sequence(lonely, EdgeSeq((0,), "cycle"))
        sharing = path_graph(3)
        assert validate_edge_sequence(sharing, EdgeSeq((0, 1), "cycle"))

    def test_reverse_of_accepted_path_is_accepted(self):
        for seed in range(30):
            g = random_graph(seed)
            res = solve_edge_ham_exact(g, "path")
            if res.is_yes:
                assert validate_edge_sequence(g, res.certificate.reversed())


class TestValidateDes:
    def test_k4_triangle(self):
        g = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        tri = frozenset(i for i, e in enumerate(g.edges) if 3 not in e)
        assert validate_des(g, DesSolution(frozenset({0, 1, 2}), tri))

    def test_star_single_vertex(self):
        g = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        assert validate_des(g, DesSolution(frozenset({0}), frozenset()))

    def test_p4_middle_edge_has_odd_degrees(self):
        g = path_graph(4)
        assert not validate_des(g, DesSolution(frozenset({1, 2}), frozenset({1})))

    def test_diagnostics(self):
        g = path_graph(4)
        assert "covered" in des_violation(g, DesSolution(frozenset({0}), frozenset()))
        assert "odd" in des_violation(
            g, DesSolution(frozenset({1, 2}), frozenset({1}))
        )


class TestClassifyTypes:
    def test_star_all_type_one(self):
        g = build_graph(5, [(0, i) for i in range(1, 5)])
        t = classify_types(g, (0,))
        assert t.type_of == (1, 1, 1, 1)

    def test_triangle_smallest_index_rule(self):
        g = build_graph(3, [(0, 1), (0, 2), (1, 2)])
        t = classify_types(g, (0, 1))
        assert t.type_of == (1, 1, 2)

    def test_all_vertices_gives_min_endpoint(self):
        for seed in range(5):
            g = random_graph(seed)
            t = classify_types(g, tuple(range(g.n)))
            assert t.type_of == tuple(min(e) + 1 for e in g.edges)

    def test_not_a_hitting_set(self):
        g = build_graph(4, [(0, 1), (2, 3)])
        with pytest.raises(NotAHittingSetError):
            classify_types(g, (0,))

    def test_never_assigns_later_type(self):
        for seed in range(10):
            g = random_graph(seed)
            hs = tuple(sorted({u for e in g.edges for u in e}))
            t = classify_types(g, hs)
            for e in range(g.m):
                i = t.type_of[e]
                members = g.edge_vertices(e)
                assert hs[i - 1] in members
                assert all(hs[j] not in members for j in range(i - 1))


class TestDecomposeGroups:
    def test_two_groups(self):
        g = build_graph(4, [(0, 1), (0, 2), (1, 3)])
        t = classify_types(g, (0, 1))
        assert t.type_of == (1, 1, 2)
        d = decompose_groups(EdgeSeq((0, 1, 2), "path"), t)
        assert [(grp.type_index, grp.size) for grp in d.groups] == [(1, 2), (2, 1)]
        assert d.special_edges == frozenset({0, 1, 2})

    def test_single_group(self):
        g = build_graph(5, [(0, i) for i in range(1, 5)])
        t = classify_types(g, (0,))
        d = decompose_groups(EdgeSeq((2, 0, 1, 3), "path"), t)
        assert len(d.groups) == 1
        assert d.special_edges == frozenset({2, 3})

    def test_alternating(self):
        g = build_graph(4, [(0, 1), (1, 2), (0, 3)])
        t = classify_types(g, (0, 1))
        assert t.type_of == (1, 2, 1)
        d = decompose_groups(EdgeSeq((0, 1, 2), "path"), t)
        assert len(d.groups) == 3
        assert len(d.special_edges) == 3


def _ordered_pair_counts(order, type_of):
    counts = {}
    for p in range(len(order) - 1):
        i, j = type_of[order[p]], type_of[order[p + 1]]
        if i != j:
            counts[(i, j)] = counts.get((i, j), 0) + 1
    return counts


class TestNormalizeEdgePath:
    def test_fixpoint(self):
        g = path_graph(4)
        t = classify_types(g, (1, 2))
        s = EdgeSeq((0, 1, 2), "path")
        assert normalize_edge_path(g, s, t) == s

    def test_single_type_unchanged(self):
        g = build_graph(5, [(0, i) for i in range(1, 5)])
        t = classify_types(g, (0,))
        s = EdgeSeq((3, 1, 0, 2), "path")
        assert normalize_edge_path(g, s, t) == s

    def test_repeated_pattern_collapses(self):
        # edges around u1=0 and u2=1 admitting a 1,2,1,2 typed path
        g = build_graph(6, [(0, 2), (1, 2), (0, 3), (1, 3), (0, 1)])
        t = classify_types(g, (0, 1))
        s = EdgeSeq((0, 1, 3, 2, 4), "path")
        assert validate_edge_sequence(g, s)
        out = normalize_edge_path(g, s, t)
        assert validate_edge_sequence(g, out)
        counts = _ordered_pair_counts(out.order, t.type_of)
        assert all(c <= 1 for c in counts.values())

    def test_oracle_paths_normalize_cleanly(self):
        for seed in range(25):
            g = random_graph(seed)
            cover = tuple(sorted({u for e in g.edges for u in e}))[:3]
            try:
                t = classify_types(g, cover)
            except NotAHittingSetError:
                continue
            res = solve_edge_ham_exact(g, "path")
            if not res.is_yes:
                continue
            out = normalize_edge_path(g, res.certificate, t)
            counts = _ordered_pair_counts(out.order, t.type_of)
            assert all(c <= 1 for c in counts.values())
            d = decompose_groups(out, t)
            k = t.k
            per_type = {}
            for grp in d.groups:
                per_type[grp.type_index] = per_type.get(grp.type_index, 0) + 1
            assert all(c <= k for c in per_type.values())


class TestInsertionSlot:
    def test_prefers_inside_a_run(self):
        assert insertion_slot([1, 1, 2], 1) == 1

    def test_falls_back_to_the_matching_end(self):
        assert insertion_slot([1, 2, 1], 1) == 3
        assert insertion_slot([1, 2], 1) == 0

    def test_raises_without_any_slot(self):
        with pytest.raises(NoLargeGroupError):
            insertion_slot([2, 1, 2], 1)


def test_trivial_conventions():
    empty = Graph(3, ())
    assert trivial_edge_ham(empty, "path") == (True, ())
    assert trivial_edge_ham(empty, "cycle") == (True, ())
    single = build_graph(2, [(0, 1)])
    assert trivial_edge_ham(single, "cycle") == (True, (0,))
    sharing = path_graph(3)
    assert trivial_edge_ham(sharing, "path") == (True, (0, 1))
    disjoint = build_graph(4, [(0, 1), (2, 3)])
    assert trivial_edge_ham(disjoint, "cycle") == (False, None)
    assert trivial_edge_ham(path_graph(4), "path") is None
