import pytest

from edgeham.core import build_graph
from edgeham.errors import InvalidDecompositionError
from edgeham.oracle import exact_treewidth_small, solve_des_exact, solve_edge_ham_exact
from edgeham.treewidth import (
    TreeDecomposition,
    decide_ehc_tw,
    decomposition_from_elimination,
    des_dp,
    make_nice,
    min_fill_decomposition,
    nice_violation,
    td_violation,
    validate_td,
)
from edgeham.core import validate_des

from helpers import random_graph


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


class TestMinFill:
    def test_widths(self):
        assert min_fill_decomposition(path_graph(6)).width == 1
        assert min_fill_decomposition(cycle_graph(6)).width == 2
        assert min_fill_decomposition(complete_graph(4)).width == 3

    def test_always_valid(self):
        for seed in range(20):
            g = random_graph(seed)
            assert validate_td(g, min_fill_decomposition(g))

    def test_handles_isolated_vertices(self):
        g = build_graph(5, [(0, 1)])
        td = min_fill_decomposition(g)
        assert validate_td(g, td)


class TestValidateTd:
    def test_rejects_missing_edge_bag(self):
        g = path_graph(3)
        td = TreeDecomposition((frozenset({0, 1}), frozenset({2})), ((0, 1),))
        assert "inside no bag" in td_violation(g, td)

    def test_rejects_disconnected_occurrences(self):
        g = path_graph(4)
        td = TreeDecomposition(
            (frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3, 0})),
            ((0, 1), (1, 2)),
        )
        assert "not connected" in td_violation(g, td)

    def test_rejects_cyclic_bag_graph(self):
        g = path_graph(3)
        td = TreeDecomposition(
            (frozenset({0, 1}), frozenset({1, 2}), frozenset({1})),
            ((0, 1), (1, 2), (2, 0)),
        )
        assert td_violation(g, td) is not None


class TestMakeNice:
    def test_triangle_single_bag(self):
        g = complete_graph(3)
        td = TreeDecomposition((frozenset({0, 1, 2}),), ())
        nice = make_nice(g, td)
        kinds = {}
        for nd in nice.nodes:
            kinds[nd.kind] = kinds.get(nd.kind, 0) + 1
        assert kinds["introduce"] == 3
        assert kinds["edge"] == 3
        assert kinds["forget"] == 3
        assert nice.nodes[nice.root].bag == frozenset()

    def test_structurally_valid_everywhere(self):
        for seed in range(15):
            g = random_graph(seed)
            nice = make_nice(g, min_fill_decomposition(g))
            assert nice_violation(g, nice) is None

    def test_width_unchanged(self):
        for seed in range(10):
            g = random_graph(seed)
            td = min_fill_decomposition(g)
            assert make_nice(g, td).width == td.width

    def test_rejects_invalid_decomposition(self):
        g = path_graph(3)
        bad = TreeDecomposition((frozenset({0, 1}),), ())
        with pytest.raises(InvalidDecompositionError):
            make_nice(g, bad)


class TestDesDp:
    def test_examples(self):
        assert not des_dp(path_graph(4),
                          make_nice(path_graph(4),
                                    min_fill_decomposition(path_graph(4)))).is_yes
        star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        res = des_dp(star, make_nice(star, min_fill_decomposition(star)))
        assert res.is_yes and res.certificate.e0 == frozenset()
        c6 = cycle_graph(6)
        res = des_dp(c6, make_nice(c6, min_fill_decomposition(c6)))
        assert res.is_yes and res.certificate.e0 == frozenset(range(6))

    def test_matches_subset_oracle(self):
        for seed in range(40):
            g = random_graph(seed)
            nice = make_nice(g, min_fill_decomposition(g))
            got = des_dp(g, nice)
            want = solve_des_exact(g)
            assert got.is_yes == want.is_yes
            if got.is_yes:
                assert validate_des(g, got.certificate)

    def test_invariant_under_decomposition_choice(self):
        for seed in range(20):
            g = random_graph(seed)
            a = des_dp(g, make_nice(g, min_fill_decomposition(g))).is_yes
            exact_td = decomposition_from_elimination(
                g, exact_treewidth_small(g).elimination_order
            )
            b = des_dp(g, make_nice(g, exact_td)).is_yes
            assert a == b


class TestDecideEhcTw:
    def test_examples(self):
        assert decide_ehc_tw(cycle_graph(4))
        assert not decide_ehc_tw(path_graph(4))
        assert decide_ehc_tw(build_graph(2, [(0, 1)]))  # m = 1 convention

    def test_matches_oracle(self):
        for seed in range(40):
            g = random_graph(seed)
            assert decide_ehc_tw(g) == solve_edge_ham_exact(g, "cycle").is_yes
