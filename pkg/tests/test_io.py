import pytest

import edgeham.io as fmt
from edgeham.cliquewidth import eval_cwe, random_cwe
from edgeham.core import DesSolution, EdgeSeq, build_graph
from edgeham.errors import (
    CountMismatchError,
    DuplicateEdgeError,
    ParseError,
    VertexOutOfRangeError,
)
from edgeham.generators import generate_family
from edgeham.kernel import kernelize
from edgeham.oracle import solve_edge_ham_exact
from edgeham.rng import mix
from edgeham.treewidth import min_fill_decomposition


class TestGraphFormat:
    def test_parse_p3(self):
        g = fmt.parse_graph("p edge 3 2\ne 1 2\ne 2 3\n")
        assert g == build_graph(3, [(0, 1), (1, 2)])

    def test_comments_ignored(self):
        g = fmt.parse_graph("c hello\np edge 2 1\nc mid\ne 1 2\n")
        assert g.m == 1

    def test_round_trip(self):
        g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert fmt.parse_graph(fmt.serialize_graph(g)) == g

    def test_vertex_out_of_range(self):
        with pytest.raises(VertexOutOfRangeError):
            fmt.parse_graph("p edge 2 1\ne 1 3\n")

    def test_count_mismatch(self):
        with pytest.raises(CountMismatchError):
            fmt.parse_graph("p edge 3 2\ne 1 2\n")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            fmt.parse_graph("p edge 2 1\ne 1 2\nwat\n")

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdgeError):
            fmt.parse_graph("p edge 2 2\ne 1 2\ne 2 1\n")


class TestHypergraphFormat:
    def test_parse(self):
        h = fmt.parse_hypergraph("p hyp 3 2\nh 1 2 3\nh 2 3\n")
        assert h.m == 2 and h.hyperedges[0] == frozenset({0, 1, 2})

    def test_round_trip(self):
        h, _ = generate_family("hyper_hs 8 2 6 3", seed=4)
        assert fmt.parse_hypergraph(fmt.serialize_hypergraph(h)) == h

    def test_malformed(self):
        with pytest.raises(ParseError):
            fmt.parse_hypergraph("p hyp 3 1\nh\n")


class TestTdFormat:
    def test_round_trip(self):
        for seed in range(8):
            g, _ = generate_family("gnm 7 9", seed=seed)
            td = min_fill_decomposition(g)
            assert fmt.parse_td(fmt.serialize_td(td, g.n)) == td

    def test_example(self):
        td = fmt.parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n")
        assert td.width == 1 and td.bags[0] == frozenset({0, 1})

    def test_width_mismatch_rejected(self):
        with pytest.raises(CountMismatchError):
            fmt.parse_td("s td 1 3 3\nb 1 1 2\n")


class TestCweFormat:
    def test_example(self):
        e = fmt.parse_cwe("k 2\n(join 1 2 (union (intro 1) (intro 2)))\n")
        assert eval_cwe(e).graph.m == 1

    def test_round_trip(self):
        for seed in range(8):
            e = random_cwe(3, 5, mix(seed, 3))
            text = fmt.serialize_cwe(e)
            back = fmt.parse_cwe(text)
            assert back.budget == e.budget
            assert eval_cwe(back).graph == eval_cwe(e).graph
            assert fmt.serialize_cwe(back) == text

    def test_join_same_label(self):
        from edgeham.errors import JoinSameLabelError
        with pytest.raises(JoinSameLabelError):
            fmt.parse_cwe("k 2\n(join 1 1 (union (intro 1) (intro 1)))\n")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            fmt.parse_cwe("k 2\n(intro 1) (intro 2)\n")


class TestTraceFormat:
    def test_round_trip(self):
        g, info = generate_family("vc_bounded 9 2 12", seed=2)
        trace = kernelize(g, info["planted"])
        back = fmt.parse_trace(fmt.serialize_trace(trace))
        assert back == trace
        assert back.original_graph() == g

    def test_malformed(self):
        with pytest.raises(ParseError):
            fmt.parse_trace("{not json")
        with pytest.raises(ParseError):
            fmt.parse_trace('{"n": 2}')


class TestWitnessFormats:
    def test_edge_witness(self):
        seq = EdgeSeq((2, 0, 1), "path")
        assert fmt.parse_edge_witness(fmt.serialize_edge_witness(seq), "path") == seq

    def test_des_witness(self):
        sol = DesSolution(frozenset({0, 2}), frozenset({1}))
        assert fmt.parse_des_witness(fmt.serialize_des_witness(sol)) == sol
        empty = DesSolution(frozenset({0}), frozenset())
        assert fmt.parse_des_witness(fmt.serialize_des_witness(empty)) == empty

    def test_witness_round_trip_from_solver(self):
        g, _ = generate_family("cycle 5", seed=0)
        cert = solve_edge_ham_exact(g, "cycle").certificate
        text = fmt.serialize_edge_witness(cert)
        assert fmt.parse_edge_witness(text, "cycle") == cert
