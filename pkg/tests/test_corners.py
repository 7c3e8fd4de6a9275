"""Corner paths: one-sided answers, caps, duplicated hyperedges, anchored
gadget semantics, and certificate transfer through re-sourced rewrites."""

import pytest

import edgeham.io as fmt
from edgeham.cli import main
from edgeham.cliquewidth import (
    CwExpr,
    CwIntro,
    CwJoin,
    CwUnion,
    decide_ehc_cw,
    eliminate_big_joins,
    transfer_des_across_reduction,
)
from edgeham.core import (
    DesSolution,
    EdgeSeq,
    build_graph,
    build_hypergraph,
    validate_des,
    validate_edge_sequence,
)
from edgeham.errors import MergedInstanceTooLargeError
from edgeham.hyper import HyperSolveConfig, decide_hyper_ehp
from edgeham.oracle import solve_edge_ham_exact
from edgeham.transforms import ehp_to_ehc_gadget


def two_far_stars(leaves: int):
    """Two hub-and-spoke clusters with no shared vertex: never edge-Hamiltonian."""
    edges = [(0, 2 + i) for i in range(leaves)]
    edges += [(1, 2 + leaves + i) for i in range(leaves)]
    return build_hypergraph(2 + 2 * leaves, [set(e) for e in edges])


class TestOneSidedAnswers:
    def test_probably_no_when_space_is_large(self):
        h = two_far_stars(6)  # both types large: 4^12 colorings, randomized
        res = decide_hyper_ehp(h, (0, 1), HyperSolveConfig(max_rounds=16, seed=3))
        assert res.answer == "probably-no"
        assert res.nodes == 16

    def test_probably_no_exit_code(self, tmp_path):
        h = two_far_stars(6)
        p = tmp_path / "h.hgr"
        p.write_text(fmt.serialize_hypergraph(h))
        code = main(["solve", "--problem", "path", "--method", "hyper",
                     "--input", str(p), "--hitting-set", "1,2",
                     "--max-rounds", "8"])
        assert code == 2

    def test_merged_cap(self):
        h = two_far_stars(6)
        with pytest.raises(MergedInstanceTooLargeError):
            decide_hyper_ehp(h, (0, 1), oracle_cap=7)

    def test_cap_exit_code(self, tmp_path, monkeypatch):
        g, = (build_graph(6, [(i, j) for i in range(6) for j in range(i + 1, 6)]),)
        p = tmp_path / "k6.gr"
        p.write_text(fmt.serialize_graph(g))
        monkeypatch.setenv("EDGEHAM_ORACLE_CAP", "5")
        code = main(["solve", "--problem", "cycle", "--method", "oracle",
                     "--input", str(p)])
        assert code == 70


class TestDuplicateHyperedges:
    def test_allowed_and_solvable(self):
        h = build_hypergraph(3, [{0, 1}, {0, 1}, {0, 2}])
        assert h.m == 3
        res = solve_edge_ham_exact(h, "path")
        assert res.is_yes and validate_edge_sequence(h, res.certificate)


class TestAnchoredGadget:
    def test_cycle_answer_tracks_anchored_paths(self):
        # on a path graph the edge path is forced end to end, so only the
        # endpoint anchors make the gadget graph cycle-solvable
        g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
        # only edge orders (e0,e1,e2) and its reverse are valid, so the
        # anchors must sit in the two end edges, one on each side
        for u in range(4):
            for v in range(4):
                if u == v:
                    continue
                gadget, _ = ehp_to_ehc_gadget(g, u, v)
                got = solve_edge_ham_exact(gadget, "cycle").is_yes
                want = ((u in (0, 1) and v in (2, 3))
                        or (u in (2, 3) and v in (0, 1)))
                assert got == want, (u, v)


class TestResourcedRewriteTransfers:
    def test_certificates_cross_every_nested_event(self):
        # nested identical joins: the first splice's removal is re-sourced by
        # the outer join, so its event removes nothing and adds the gadget
        inner = CwJoin(1, 2, _union_chain([1] * 7 + [2] * 7))
        e = CwExpr(CwJoin(1, 2, inner), 2)
        _, report = decide_ehc_cw(e)
        events = [ev for ev in report.events if ev.site is not None]
        assert len(events) == 2
        first = events[0]
        assert len(first.after.edges) > len(first.before.edges)
        a, b = list(first.site.a), list(first.site.b)
        pidx = {tuple(sorted(p)): i for i, p in enumerate(first.before.edges)}
        cyc = [(a[i], b[i]) for i in range(7)] + \
              [(a[i], b[(i + 1) % 7]) for i in range(7)]
        sol = DesSolution(frozenset(a + b),
                          frozenset(pidx[tuple(sorted(p))] for p in cyc))
        for ev in events:
            assert validate_des(ev.before, sol)
            fwd = transfer_des_across_reduction("forward", ev.site,
                                                ev.before, ev.after, sol)
            assert validate_des(ev.after, fwd)
            back = transfer_des_across_reduction("backward", ev.site,
                                                 ev.before, ev.after, fwd)
            assert validate_des(ev.before, back)
            sol = fwd


class TestAutoRouting:
    def test_auto_picks_cw_for_large_cycles_with_expression(self, tmp_path,
                                                            monkeypatch,
                                                            capsys):
        node = _union_chain([1] * 7 + [2] * 7)
        e = CwExpr(CwJoin(1, 2, node), 2)
        g = build_graph(14, [(i, 7 + j) for i in range(7) for j in range(7)])
        gp = tmp_path / "g.gr"
        gp.write_text(fmt.serialize_graph(g))
        ep = tmp_path / "e.cwe"
        ep.write_text(fmt.serialize_cwe(e))
        monkeypatch.setenv("EDGEHAM_ORACLE_CAP", "10")
        assert main(["solve", "--problem", "cycle", "--input", str(gp),
                     "--cwe", str(ep)]) == 0
        assert capsys.readouterr().out.startswith("verdict yes")

    def test_auto_path_never_picks_cw(self, tmp_path, monkeypatch):
        g = build_graph(5, [(i, i + 1) for i in range(4)])
        gp = tmp_path / "g.gr"
        gp.write_text(fmt.serialize_graph(g))
        ep = tmp_path / "e.cwe"
        ep.write_text("k 2\n(join 1 2 (union (intro 1) (intro 2)))\n")
        monkeypatch.setenv("EDGEHAM_ORACLE_CAP", "2")
        # falls back to the treewidth route, which handles paths
        assert main(["solve", "--problem", "path", "--input", str(gp),
                     "--cwe", str(ep)]) == 0


def _union_chain(labels):
    node = CwIntro(labels[0])
    for lab in labels[1:]:
        node = CwUnion(node, CwIntro(lab))
    return node
