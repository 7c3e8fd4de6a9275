"""Color-coding solver for edge-Hamiltonian paths on hypergraphs.

The parameter is a supplied hitting set of size k. Types with more than 2k
hyperedges are colored with 2k colors and each color class is merged into a
single union hyperedge, leaving at most 2k^2 hyperedges when every type is
large. A merged-instance yes always converts back to a certificate of the
original hypergraph, so a yes answer is sound for any coloring; the coloring
only affects the chance of *finding* one, hence the one-sided "probably-no".
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import product

from .core import (
    EdgeSeq,
    Graph,
    Hypergraph,
    TypeAssignment,
    classify_types,
    insertion_slot,
    validate_edge_sequence,
    _normalize_order,
)
from .errors import (
    InvalidCertificateError,
    MergedInstanceTooLargeError,
    NotAPermutationError,
    NotAProperColoringError,
)
from .oracle import (
    DEFAULT_EDGE_CAP,
    SolveResult,
    no_result,
    solve_edge_ham_exact,
    yes_edge_seq,
)
from .rng import SplitMix64, mix

BackEntry = tuple  # ("orig", index) or ("class", type, color, members)


@dataclass(frozen=True)
class ColorMerge:
    """One coloring round: who got which color, and the merged hypergraph."""

    colors_per_type: int
    types: TypeAssignment
    coloring: dict
    merged: Hypergraph
    back_map: tuple[BackEntry, ...]


@dataclass(frozen=True)
class HyperSolveConfig:
    delta: float = 0.01
    max_rounds: int = 256
    seed: int = 0
    deterministic_fallback_threshold: int = 5000

    def __post_init__(self):
        if not (0 < self.delta < 1):
            raise ValueError("delta must be in (0, 1)")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")


def required_rounds(k: int, delta: float) -> int:
    """Repetitions that drive the one-sided failure probability below delta."""
    return math.ceil(math.exp(2 * k * k) * math.log(1 / delta))


def _edges_by_type(t: TypeAssignment) -> dict[int, list[int]]:
    by_type: dict[int, list[int]] = {i: [] for i in range(1, t.k + 1)}
    for e, i in enumerate(t.type_of):
        by_type[i].append(e)
    return by_type


def _merge_from_coloring(h: Hypergraph, t: TypeAssignment,
                         coloring: dict, colors: int) -> ColorMerge:
    """Assemble the merged hypergraph for a complete coloring of the large types."""
    colored_types = sorted({i for (i, _e) in coloring})
    untouched = [e for e in range(h.m) if (t.type_of[e], e) not in coloring]
    back: list[BackEntry] = [("orig", e) for e in untouched]
    members_of: list[frozenset[int]] = [h.hyperedges[e] for e in untouched]
    for i in colored_types:
        classes: dict[int, list[int]] = {c: [] for c in range(1, colors + 1)}
        for e in range(h.m):
            if (i, e) in coloring:
                classes[coloring[(i, e)]].append(e)
        for c in range(1, colors + 1):
            group = classes[c]
            if not group:
                raise AssertionError(f"color {c} of type {i} is unused")
            union = frozenset().union(*(h.hyperedges[e] for e in group))
            back.append(("class", i, c, tuple(group)))
            members_of.append(union)
    return ColorMerge(colors, t, dict(coloring),
                      Hypergraph(h.n, tuple(members_of)), tuple(back))


def color_and_merge(h: Hypergraph, t: TypeAssignment, round_seed: int) -> ColorMerge:
    """Randomly color each large type with 2k colors and merge color classes.

    2k pivot hyperedges per large type receive the 2k distinct colors, so
    every color class is non-empty; the rest are colored uniformly. Types
    with at most 2k hyperedges pass through untouched. Merged edges appear
    after the untouched ones, ordered by (type, color).
    """
    colors = 2 * t.k
    rng = SplitMix64(round_seed)
    coloring: dict = {}
    for i, members in sorted(_edges_by_type(t).items()):
        if len(members) <= colors:
            continue
        for c0, e in enumerate(rng.sample(members, colors)):
            coloring[(i, e)] = c0 + 1
        for e in members:
            if (i, e) not in coloring:
                coloring[(i, e)] = 1 + rng.randrange(colors)
    return _merge_from_coloring(h, t, coloring, colors)


def reconstruct_certificate(h: Hypergraph, cm: ColorMerge,
                            merged_path: EdgeSeq) -> EdgeSeq:
    """Convert a merged-instance edge path into one for the original hypergraph.

    Each union edge is replaced by one or two class members covering the
    junction vertices with its current neighbors (a path end needs only one
    junction); hyperedges left out of the resulting sub-path are then
    inserted next to an edge of their own type, which exists because a
    merged type contributes 2k distinct edges to the sub-path.
    """
    try:
        ok = (merged_path.mode == "path"
              and validate_edge_sequence(cm.merged, merged_path))
    except NotAPermutationError as exc:
        raise InvalidCertificateError(str(exc)) from exc
    if not ok:
        raise InvalidCertificateError("not a valid edge path of the merged instance")
    t = cm.types
    items: list[BackEntry] = [cm.back_map[j] for j in merged_path.order]

    def vset(entry: BackEntry) -> frozenset[int]:
        if entry[0] == "orig":
            return h.hyperedges[entry[1]]
        return frozenset().union(*(h.hyperedges[e] for e in entry[3]))

    p = 0
    while p < len(items):
        if items[p][0] == "orig":
            p += 1
            continue
        members = sorted(items[p][3])
        mine = vset(items[p])
        repl: list[int] = []
        if p > 0:
            v1 = min(mine & vset(items[p - 1]))
            repl.append(min(e for e in members if v1 in h.hyperedges[e]))
        if p < len(items) - 1:
            v2 = min(mine & vset(items[p + 1]))
            e2 = min(e for e in members if v2 in h.hyperedges[e])
            if not repl or repl[0] != e2:
                repl.append(e2)
        if not repl:
            repl = [members[0]]
        items[p : p + 1] = [("orig", e) for e in repl]
        p += len(repl)
    seq = [entry[1] for entry in items]
    if len(set(seq)) != len(seq):
        raise AssertionError("junction replacement duplicated a hyperedge")
    present = set(seq)
    for i, members in sorted(_edges_by_type(t).items()):
        missing = [e for e in members if e not in present]
        if not missing:
            continue
        _normalize_order(seq, t.type_of)
        slot = insertion_slot([t.type_of[e] for e in seq], i)
        seq[slot:slot] = missing
        present.update(missing)
    out = EdgeSeq(tuple(seq), "path")
    if not validate_edge_sequence(h, out):
        raise AssertionError("reconstructed certificate failed validation")
    return out


def decide_hyper_ehp(h: Hypergraph, hitting_set, cfg: HyperSolveConfig | None = None,
                     oracle_cap: int = DEFAULT_EDGE_CAP) -> SolveResult:
    """One-sided decision for the path variant, parameterized by `hitting_set`.

    Yes answers carry validated certificates and are sound under any seed.
    When every coloring can be enumerated within the configured threshold
    the answer is exact ("no"); otherwise after the round budget it is
    "probably-no". With a hitting set of size one, or with no large types,
    the solver is deterministic and exact in a single round.
    """
    cfg = cfg or HyperSolveConfig()
    started = time.perf_counter()
    t = classify_types(h, hitting_set)
    k = t.k
    if k == 1:
        # every pair of hyperedges shares u_1: any permutation works
        return yes_edge_seq(h, tuple(range(h.m)), "path", 1, started)
    by_type = _edges_by_type(t)
    colors = 2 * k
    large = [i for i, members in sorted(by_type.items()) if len(members) > colors]
    merged_m = sum(min(len(members), colors) for members in by_type.values())
    if merged_m > oracle_cap:
        raise MergedInstanceTooLargeError(
            f"merged instance has {merged_m} hyperedges, above the cap {oracle_cap}"
        )
    if not large:
        # nothing to color: the instance already is its own merge
        res = solve_edge_ham_exact(h, "path", cap=oracle_cap)
        return SolveResult(res.answer, res.certificate, 1,
                           time.perf_counter() - started)

    space = 1
    for i in large:
        space *= colors ** len(by_type[i])
        if space > cfg.deterministic_fallback_threshold:
            break
    if space <= cfg.deterministic_fallback_threshold:
        return _exhaustive(h, t, large, by_type, colors, oracle_cap, started)

    rounds = min(cfg.max_rounds, required_rounds(k, cfg.delta))
    for r in range(rounds):
        cm = color_and_merge(h, t, mix(cfg.seed, r))
        res = solve_edge_ham_exact(cm.merged, "path", cap=oracle_cap)
        if res.is_yes:
            cert = reconstruct_certificate(h, cm, res.certificate)
            return SolveResult("yes", cert, r + 1, time.perf_counter() - started)
    return no_result(rounds, started, answer="probably-no")


def _exhaustive(h, t, large, by_type, colors, oracle_cap, started) -> SolveResult:
    """Try every surjective coloring of the large types; exact either way."""
    tried = 0
    per_type = []
    for i in large:
        members = by_type[i]
        per_type.append([(i, members, assignment)
                         for assignment in product(range(1, colors + 1),
                                                   repeat=len(members))
                         if len(set(assignment)) == colors])
    for picks in product(*per_type):
        coloring: dict = {}
        for i, members, assignment in picks:
            for e, c in zip(members, assignment):
                coloring[(i, e)] = c
        cm = _merge_from_coloring(h, t, coloring, colors)
        tried += 1
        res = solve_edge_ham_exact(cm.merged, "path", cap=oracle_cap)
        if res.is_yes:
            cert = reconstruct_certificate(h, cm, res.certificate)
            return SolveResult("yes", cert, tried, time.perf_counter() - started)
    return no_result(tried, started, answer="no")


def complement_coloring_reduction(g: Graph, coloring) -> tuple[Hypergraph, tuple[int, ...]]:
    """Encode vertex Hamiltonicity of g as an edge path question.

    `coloring` must color every vertex with 1..k so that same-colored
    vertices are adjacent in g (each color class is a clique). The output
    hypergraph has one vertex per color plus one per edge of g, and one
    hyperedge per vertex of g: its incident edges plus its color vertex.
    The color vertices form a hitting set of size k, and g is the line
    graph of the result.
    """
    coloring = dict(coloring)
    if set(coloring) != set(range(g.n)):
        raise NotAProperColoringError("coloring must assign every vertex")
    k = max(coloring.values(), default=0)
    if any(c < 1 for c in coloring.values()):
        raise NotAProperColoringError("colors must be >= 1")
    by_color: dict[int, list[int]] = {}
    for v, c in coloring.items():
        by_color.setdefault(c, []).append(v)
    for c, members in by_color.items():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                if not g.has_edge(members[a], members[b]):
                    raise NotAProperColoringError(
                        f"vertices {members[a]} and {members[b]} share color {c} "
                        "but are not adjacent"
                    )
    hyperedges = []
    for v in range(g.n):
        members = {coloring[v] - 1}
        members.update(k + j for j in g.incidence[v])
        hyperedges.append(frozenset(members))
    return Hypergraph(k + g.m, tuple(hyperedges)), tuple(range(k))
