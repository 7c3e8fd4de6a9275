"""Edge-deletion kernel for the path variant, parameterized by a vertex cover.

The reduction deletes an edge (u_i, w) when w is outside the cover, at least
k+1 edges of u_i's type remain, and every other cover vertex adjacent to w
shares more than 4k common neighbors with u_i outside the cover. Deletions
are replayable, and certificates for the kernel lift back to the original
graph by re-inserting each deleted edge next to an edge of its own type.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    EdgeSeq,
    Graph,
    TypeAssignment,
    check_edge_type,
    classify_types,
    insertion_slot,
    normalize_edge_path,
    validate_edge_sequence,
)
from .errors import (
    InvalidCertificateError,
    NotAPermutationError,
    NotAVertexCoverError,
)


@dataclass(frozen=True)
class Deletion:
    """One logged deletion: the edge's original index, pair and type."""

    index: int
    pair: tuple[int, int]
    type_index: int


@dataclass(frozen=True)
class KernelTrace:
    vertex_cover: tuple[int, ...]
    deletions: tuple[Deletion, ...]
    kernel: Graph

    def original_graph(self) -> Graph:
        """Rebuild the input graph by undoing the deletions in place."""
        m = self.kernel.m + len(self.deletions)
        deleted = {d.index: d.pair for d in self.deletions}
        edges: list[tuple[int, int]] = []
        it = iter(self.kernel.edges)
        for i in range(m):
            edges.append(deleted[i] if i in deleted else next(it))
        return Graph(self.kernel.n, tuple(edges))

    def kernel_index_map(self) -> tuple[int, ...]:
        """kernel edge position -> original edge index."""
        deleted = {d.index for d in self.deletions}
        m = self.kernel.m + len(self.deletions)
        return tuple(i for i in range(m) if i not in deleted)


def two_approx_vc(g: Graph) -> tuple[int, ...]:
    """Endpoints of a greedy maximal matching, lowest edge index first."""
    covered: set[int] = set()
    for u, v in g.edges:
        if u not in covered and v not in covered:
            covered.add(u)
            covered.add(v)
    return tuple(sorted(covered))


def is_vertex_cover(g: Graph, cover) -> bool:
    cset = set(cover)
    return all(u in cset or v in cset for u, v in g.edges)


def rule_applies(g: Graph, t: TypeAssignment, e: int) -> bool:
    """Deletion-safety test for edge e = (u_i, w) against cover S.

    Condition three quantifies over the *other* cover vertices adjacent to w;
    u_i itself always sits in the intersection and carries no information.
    """
    u_i = check_edge_type(g, t, e)
    i = t.type_of[e]
    a, b = g.edges[e]
    w = b if a == u_i else a
    s = set(t.hitting_set)
    k = t.k
    if w in s:
        return False
    if sum(1 for x in t.type_of if x == i) < k + 1:
        return False
    ni = g.adjacency[u_i]
    for u_j in t.hitting_set:
        if u_j == u_i or u_j not in g.adjacency[w]:
            continue
        overlap = (ni & g.adjacency[u_j]) - s
        if len(overlap) <= 4 * k:
            return False
    return True


def kernelize(g: Graph, cover) -> KernelTrace:
    """Delete the lowest-index applicable edge until no rule fires.

    Types never change during the run: they depend only on the cover, which
    is fixed, so the per-edge type is computed once up front.
    """
    cover = tuple(cover)
    if not is_vertex_cover(g, cover):
        raise NotAVertexCoverError("the supplied set misses an edge")
    orig_types = classify_types(g, cover)
    alive = list(range(g.m))
    deletions: list[Deletion] = []
    while True:
        current = Graph(g.n, tuple(g.edges[i] for i in alive))
        t_cur = TypeAssignment(cover, tuple(orig_types.type_of[i] for i in alive))
        fired = None
        for pos in range(len(alive)):
            if rule_applies(current, t_cur, pos):
                fired = pos
                break
        if fired is None:
            return KernelTrace(cover, tuple(deletions), current)
        orig = alive.pop(fired)
        deletions.append(Deletion(orig, g.edges[orig], orig_types.type_of[orig]))


def lift_certificate(trace: KernelTrace, kernel_path: EdgeSeq) -> EdgeSeq:
    """Replay deletions in reverse, inserting each edge into its type's run.

    After normalization a type with at least k surviving edges always offers
    a same-type run of length two or an end of the path headed by that type,
    so every insertion point exists for genuine traces.
    """
    kernel = trace.kernel
    try:
        ok = kernel_path.mode == "path" and validate_edge_sequence(kernel, kernel_path)
    except NotAPermutationError as exc:
        raise InvalidCertificateError(str(exc)) from exc
    if not ok:
        raise InvalidCertificateError("certificate is not a valid kernel edge path")
    original = trace.original_graph()
    index_map = trace.kernel_index_map()
    seq = [index_map[j] for j in kernel_path.order]  # original indices
    alive = sorted(seq)
    for d in reversed(trace.deletions):
        sub = Graph(original.n, tuple(original.edges[i] for i in alive))
        loc_of = {orig: loc for loc, orig in enumerate(alive)}
        t_loc = classify_types(sub, trace.vertex_cover)
        loc_seq = normalize_edge_path(
            sub, EdgeSeq(tuple(loc_of[o] for o in seq), "path"), t_loc
        )
        seq = [alive[j] for j in loc_seq.order]
        slot = insertion_slot([t_loc.type_of[j] for j in loc_seq.order], d.type_index)
        seq.insert(slot, d.index)
        alive = sorted(alive + [d.index])
    lifted = EdgeSeq(tuple(seq), "path")
    if not validate_edge_sequence(original, lifted):
        raise AssertionError("lifted certificate failed validation")
    return lifted
