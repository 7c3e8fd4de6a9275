import pytest

from edgeham.core import build_graph
from edgeham.errors import SameVertexError
from edgeham.oracle import exact_treewidth_small, solve_edge_ham_exact
from edgeham.transforms import (
    decide_via_transform,
    ehc_to_ehp_gadget,
    ehp_to_ehc_gadget,
)

from helpers import brute_vertex_cover_size, random_graph


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


class TestGadgetShapes:
    def test_path_gadget_counts(self):
        g = path_graph(3)
        out, trace = ehp_to_ehc_gadget(g, 0, 2)
        assert out.n == 5 and out.m == 5
        assert trace.added_edges == (2, 3, 4)
        assert out.edges[: g.m] == g.edges

    def test_triangle_gadget_counts(self):
        out, _ = ehp_to_ehc_gadget(complete_graph(3), 0, 1)
        assert out.n == 5 and out.m == 6

    def test_cycle_gadget_counts(self):
        out, trace = ehc_to_ehp_gadget(cycle_graph(3), 0)
        assert out.n == 7 and out.m == 7
        out2, _ = ehc_to_ehp_gadget(path_graph(3), 1)
        assert out2.n == 7 and out2.m == 6

    def test_same_vertex(self):
        with pytest.raises(SameVertexError):
            ehp_to_ehc_gadget(path_graph(3), 1, 1)


class TestGadgetDecisions:
    def test_anchored_equivalence_on_k3(self):
        g = complete_graph(3)
        gadget, _ = ehp_to_ehc_gadget(g, 0, 1)
        # a path of K3's edges from 0 to 1 exists, so the gadget has a cycle
        assert solve_edge_ham_exact(gadget, "cycle").is_yes

    def test_anchored_equivalence_on_c4(self):
        gadget, _ = ehc_to_ehp_gadget(cycle_graph(4), 0)
        assert solve_edge_ham_exact(gadget, "path").is_yes

    def test_agrees_with_oracle(self):
        cases = [path_graph(4), cycle_graph(4), complete_graph(4),
                 build_graph(4, [(0, 1), (2, 3)])]
        cases += [random_graph(seed, m_hi=8) for seed in range(12)]
        for g in cases:
            for want, inner in (("path", "cycle"), ("cycle", "path")):
                got = decide_via_transform(
                    g, want,
                    lambda gg, inner=inner: solve_edge_ham_exact(gg, inner).is_yes,
                )
                assert got == solve_edge_ham_exact(g, want).is_yes


class TestParameterShift:
    def test_vertex_cover_grows_by_at_most_two(self):
        for seed in range(8):
            g = random_graph(seed, n_lo=4, n_hi=6, m_lo=3, m_hi=7)
            base = brute_vertex_cover_size(g)
            cyc, _ = ehp_to_ehc_gadget(g, 0, 1)
            pth, _ = ehc_to_ehp_gadget(g, 0)
            assert brute_vertex_cover_size(cyc) <= base + 2
            assert brute_vertex_cover_size(pth) <= base + 2

    def test_treewidth_shift(self):
        for seed in range(8):
            g = random_graph(seed, n_lo=4, n_hi=6, m_lo=3, m_hi=7)
            base = exact_treewidth_small(g).width
            cyc, _ = ehp_to_ehc_gadget(g, 0, 1)
            pth, _ = ehc_to_ehp_gadget(g, 0)
            # a new vertex-to-vertex path can close a cycle; pendant paths cannot
            assert exact_treewidth_small(cyc).width <= max(base + 1, 2)
            assert exact_treewidth_small(pth).width == max(base, 1)
