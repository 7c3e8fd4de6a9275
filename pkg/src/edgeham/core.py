"""Core (hyper)graph model, certificates, edge types and path normalization.

Conventions used everywhere:
  - vertices are 0..n-1, edge identity is the position in the edge list;
  - graphs are simple (no loops, no parallel edges), hypergraphs allow
    duplicate hyperedges;
  - degenerate edge sequences: m <= 1 is a valid path and a valid cycle,
    and for m == 2 both modes are valid exactly when the two edges share
    a vertex.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Sequence, Union

from .errors import (
    DuplicateEdgeError,
    EdgeTypeMismatchError,
    InvalidPathError,
    NoLargeGroupError,
    NotAHittingSetError,
    NotAPermutationError,
    SelfLoopError,
    VertexOutOfRangeError,
)

Mode = Literal["path", "cycle"]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with indexed edges.

    Edges are stored as (min, max) pairs; the pair order in `edges` is the
    edge identity used by every certificate, so it must be preserved by any
    round trip.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexOutOfRangeError(f"edge ({u},{v}) outside 0..{self.n - 1}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdgeError(f"edge {key} appears twice")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the indices of its incident edges, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def edge_vertices(self, i: int) -> frozenset[int]:
        u, v = self.edges[i]
        return frozenset((u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph with indexed, possibly duplicated, non-empty hyperedges."""

    n: int
    hyperedges: tuple[frozenset[int], ...]

    def __post_init__(self):
        for i, e in enumerate(self.hyperedges):
            if not e:
                raise VertexOutOfRangeError(f"hyperedge {i} is empty")
            for v in e:
                if not (0 <= v < self.n):
                    raise VertexOutOfRangeError(
                        f"hyperedge {i} contains {v}, outside 0..{self.n - 1}"
                    )

    @property
    def m(self) -> int:
        return len(self.hyperedges)

    def edge_vertices(self, i: int) -> frozenset[int]:
        return self.hyperedges[i]


AnyGraph = Union[Graph, Hypergraph]


def build_graph(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph; edge indices follow input order."""
    norm = []
    for u, v in pairs:
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        norm.append((u, v) if u < v else (v, u))
    return Graph(n, tuple(norm))


def build_hypergraph(n: int, members: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph(n, tuple(frozenset(e) for e in members))


def as_hypergraph(g: AnyGraph) -> Hypergraph:
    if isinstance(g, Hypergraph):
        return g
    return Hypergraph(g.n, tuple(frozenset(e) for e in g.edges))


@dataclass(frozen=True)
class EdgeSeq:
    """A permutation of edge indices claimed as an edge path or edge cycle."""

    order: tuple[int, ...]
    mode: Mode

    def __post_init__(self):
        if self.mode not in ("path", "cycle"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def reversed(self) -> "EdgeSeq":
        return EdgeSeq(tuple(reversed(self.order)), self.mode)


@dataclass(frozen=True)
class DesSolution:
    """A vertex set and edge-index set claimed as a dominating Eulerian subgraph."""

    v0: frozenset[int]
    e0: frozenset[int]


@dataclass(frozen=True)
class TypeAssignment:
    """Edge types against an ordered hitting set u_1..u_k (types are 1-based)."""

    hitting_set: tuple[int, ...]
    type_of: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.hitting_set)


@dataclass(frozen=True)
class Group:
    """A maximal run of same-type edges: positions [start, end) of a sequence."""

    type_index: int
    start: int
    end: int

    @property
    def size(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class GroupDecomposition:
    groups: tuple[Group, ...]
    special_edges: frozenset[int]


def line_graph(g: AnyGraph) -> Graph:
    """Graph on g's edge indices; i~j iff edges i and j share a vertex."""
    m = g.m
    pairs = []
    for i in range(m):
        ei = g.edge_vertices(i)
        for j in range(i + 1, m):
            if ei & g.edge_vertices(j):
                pairs.append((i, j))
    return Graph(m, tuple(pairs))


def _check_permutation(g: AnyGraph, s: EdgeSeq) -> None:
    if sorted(s.order) != list(range(g.m)):
        raise NotAPermutationError(
            f"sequence is not a permutation of 0..{g.m - 1}"
        )


def validate_edge_sequence(g: AnyGraph, s: EdgeSeq) -> bool:
    """True iff consecutive edges share a vertex (cyclically in cycle mode).

    m <= 1 is valid in both modes; for m == 2 the cycle check degenerates to
    the same single shared-vertex condition as the path check.
    """
    _check_permutation(g, s)
    m = g.m
    for p in range(m - 1):
        if not g.edge_vertices(s.order[p]) & g.edge_vertices(s.order[p + 1]):
            return False
    if s.mode == "cycle" and m >= 2:
        if not g.edge_vertices(s.order[-1]) & g.edge_vertices(s.order[0]):
            return False
    return True


def trivial_edge_ham(g: AnyGraph, mode: Mode):
    """Fixed answer for m <= 2, or None when the instance is not degenerate.

    Returns (answer, order-or-None). These conventions are shared by every
    solver so the degenerate cases cannot drift apart.
    """
    m = g.m
    if m > 2:
        return None
    if m <= 1:
        return True, tuple(range(m))
    share = bool(g.edge_vertices(0) & g.edge_vertices(1))
    return (True, (0, 1)) if share else (False, None)


def des_violation(g: Graph, d: DesSolution) -> str | None:
    """None when d is a valid dominating Eulerian subgraph of g, else a reason."""
    for v in d.v0:
        if not (0 <= v < g.n):
            return f"vertex {v} out of range"
    for e in d.e0:
        if not (0 <= e < g.m):
            return f"edge index {e} out of range"
    for i, (u, v) in enumerate(g.edges):
        if u not in d.v0 and v not in d.v0:
            return f"edge {i} not covered by v0"
    if not d.e0:
        if len(d.v0) != 1:
            return "empty e0 requires exactly one vertex"
        return None
    endpoints = set()
    deg = {v: 0 for v in d.v0}
    for e in d.e0:
        for v in g.edge_vertices(e):
            endpoints.add(v)
            deg[v] = deg.get(v, 0) + 1
    if endpoints != set(d.v0):
        return "v0 differs from the endpoint set of e0"
    for v, dv in deg.items():
        if dv % 2:
            return f"vertex {v} has odd degree {dv}"
    # connectivity over the selected edges
    parent = {v: v for v in d.v0}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in d.e0:
        u, v = g.edges[e]
        parent[find(u)] = find(v)
    roots = {find(v) for v in d.v0}
    if len(roots) != 1:
        return "selected subgraph is disconnected"
    return None


def validate_des(g: Graph, d: DesSolution) -> bool:
    return des_violation(g, d) is None


def classify_types(g: AnyGraph, hitting_set: Sequence[int]) -> TypeAssignment:
    """Assign each edge the smallest index i with u_i in the edge."""
    hs = tuple(hitting_set)
    if len(set(hs)) != len(hs):
        raise NotAHittingSetError("hitting set contains duplicates")
    for u in hs:
        if not (0 <= u < g.n):
            raise NotAHittingSetError(f"vertex {u} out of range")
    types = []
    for e in range(g.m):
        members = g.edge_vertices(e)
        for i, u in enumerate(hs, start=1):
            if u in members:
                types.append(i)
                break
        else:
            raise NotAHittingSetError(f"edge {e} avoids the hitting set")
    return TypeAssignment(hs, tuple(types))


def decompose_groups(s: EdgeSeq, t: TypeAssignment) -> GroupDecomposition:
    """Maximal runs of equal type; first/last edge of each run is special."""
    order = s.order
    if sorted(order) != list(range(len(t.type_of))):
        raise NotAPermutationError("sequence does not cover all typed edges")
    groups: list[Group] = []
    special: set[int] = set()
    p = 0
    m = len(order)
    while p < m:
        q = p
        ti = t.type_of[order[p]]
        while q + 1 < m and t.type_of[order[q + 1]] == ti:
            q += 1
        groups.append(Group(ti, p, q + 1))
        special.add(order[p])
        special.add(order[q])
        p = q + 1
    return GroupDecomposition(tuple(groups), frozenset(special))


def _normalize_order(order: list[int], type_of: Sequence[int]) -> None:
    """Reverse sub-ranges until no ordered type pair (i, j), i != j, repeats.

    One reversal merges two group boundaries, so the group count strictly
    drops and the loop ends after at most m passes. Reversals preserve
    validity: the two new junctions pair edges of equal type, which always
    share their hitting-set vertex.
    """
    m = len(order)
    while True:
        first_at: dict[tuple[int, int], int] = {}
        hit = None
        for p in range(m - 1):
            i, j = type_of[order[p]], type_of[order[p + 1]]
            if i == j:
                continue
            if (i, j) in first_at:
                hit = (first_at[(i, j)], p)
                break
            first_at[(i, j)] = p
        if hit is None:
            return
        q, p = hit
        order[q + 1 : p + 1] = reversed(order[q + 1 : p + 1])


def normalize_edge_path(g: AnyGraph, s: EdgeSeq, t: TypeAssignment) -> EdgeSeq:
    """Rewrite a valid edge path so every ordered type pair occurs at most once."""
    if s.mode != "path" or not validate_edge_sequence(g, s):
        raise InvalidPathError("input is not a valid edge path")
    order = list(s.order)
    _normalize_order(order, t.type_of)
    out = EdgeSeq(tuple(order), "path")
    if not validate_edge_sequence(g, out):
        raise AssertionError("normalization produced an invalid path")
    return out


def insertion_slot(types_seq: Sequence[int], i: int) -> int:
    """Position at which an extra type-i edge can join a valid typed sequence.

    Prefers the inside of a type-i run of length >= 2; otherwise the sequence
    must start or end with type i (guaranteed whenever the sequence holds at
    least k type-i edges, k the hitting-set size), where the edge can sit at
    the boundary next to its own type.
    """
    m = len(types_seq)
    p = 0
    while p < m - 1:
        if types_seq[p] == i and types_seq[p + 1] == i:
            return p + 1
        p += 1
    if m and types_seq[-1] == i:
        return m
    if m and types_seq[0] == i:
        return 0
    raise NoLargeGroupError(f"no insertion point for an edge of type {i}")


def check_edge_type(g: AnyGraph, t: TypeAssignment, e: int) -> int:
    """Return the hitting-set vertex of e's type, verifying incidence."""
    i = t.type_of[e]
    u = t.hitting_set[i - 1]
    if u not in g.edge_vertices(e):
        raise EdgeTypeMismatchError(f"edge {e} is not incident to u_{i}")
    return u
