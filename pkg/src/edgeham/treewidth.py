"""Tree decompositions and the dominating-Eulerian-subgraph dynamic program.

The DP runs over a nice decomposition with explicit edge-introduction nodes.
A state is (S, R, P, done): the selected bag vertices, the partition of S
into connected pieces of the partial subgraph, the odd-degree subset of S,
and a flag recording that the single allowed component has already been
completed and forgotten. Selection is forbidden after completion, so a
second component can never start.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .core import DesSolution, Graph, trivial_edge_ham
from .errors import InvalidDecompositionError
from .oracle import SolveResult, no_result, yes_des


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def td_violation(g: Graph, td: TreeDecomposition) -> str | None:
    """None when td satisfies all decomposition axioms for g, else a reason."""
    b = len(td.bags)
    if b == 0:
        return "no bags"
    for i, j in td.tree_edges:
        if not (0 <= i < b and 0 <= j < b):
            return f"tree edge ({i},{j}) out of range"
    # the bag graph must be a tree
    if len(td.tree_edges) != b - 1:
        return f"{b} bags need {b - 1} tree edges, found {len(td.tree_edges)}"
    parent = list(range(b))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in td.tree_edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            return "tree edges contain a cycle"
        parent[ri] = rj
    covered = set().union(*td.bags) if td.bags else set()
    for v in range(g.n):
        if v not in covered:
            return f"vertex {v} in no bag"
    for idx, (u, v) in enumerate(g.edges):
        if not any(u in bag and v in bag for bag in td.bags):
            return f"edge {idx} inside no bag"
    # occurrences of each vertex must induce a connected subtree
    nbrs: list[list[int]] = [[] for _ in range(b)]
    for i, j in td.tree_edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    for v in range(g.n):
        occ = [i for i, bag in enumerate(td.bags) if v in bag]
        seen = {occ[0]}
        stack = [occ[0]]
        occ_set = set(occ)
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y in occ_set and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != occ_set:
            return f"bags holding vertex {v} are not connected"
    return None


def validate_td(g: Graph, td: TreeDecomposition) -> bool:
    return td_violation(g, td) is None


def decomposition_from_elimination(g: Graph, order) -> TreeDecomposition:
    """Standard bag construction from an elimination ordering.

    Bag i is vertex order[i] plus its neighbors in the fill-in graph at
    elimination time; each bag hangs off the bag of its first-eliminated
    such neighbor, and leftover roots are chained so the result is one tree.
    """
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("not an elimination ordering")
    pos = {v: i for i, v in enumerate(order)}
    nbrs: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    bags: list[frozenset[int]] = []
    parents: list[int | None] = []
    for i, v in enumerate(order):
        around = {u for u in nbrs[v] if pos[u] > i}
        bags.append(frozenset(around | {v}))
        if around:
            first = min(around, key=lambda u: pos[u])
            parents.append(pos[first])
        else:
            parents.append(None)
        for a in around:
            for c in around:
                if a != c:
                    nbrs[a].add(c)
    if not bags:
        return TreeDecomposition((frozenset(),), ())
    edges = []
    roots = [i for i, p in enumerate(parents) if p is None]
    for i, p in enumerate(parents):
        if p is not None:
            edges.append((i, p))
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(tuple(bags), tuple(edges))


def min_fill_order(g: Graph) -> tuple[int, ...]:
    """Elimination ordering greedily minimizing fill edges, ties by vertex id."""
    nbrs: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    remaining = set(range(g.n))
    order = []
    while remaining:
        best_v, best_fill = -1, None
        for v in sorted(remaining):
            around = nbrs[v] & remaining
            around_list = sorted(around)
            fill = 0
            for a in range(len(around_list)):
                for b in range(a + 1, len(around_list)):
                    if around_list[b] not in nbrs[around_list[a]]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        around = sorted(nbrs[best_v] & remaining)
        for a in range(len(around)):
            for b in range(a + 1, len(around)):
                nbrs[around[a]].add(around[b])
                nbrs[around[b]].add(around[a])
        remaining.remove(best_v)
        order.append(best_v)
    return tuple(order)


def min_fill_decomposition(g: Graph) -> TreeDecomposition:
    return decomposition_from_elimination(g, min_fill_order(g))


# -- nice decompositions -------------------------------------------------------

@dataclass(frozen=True)
class NiceNode:
    """kind is one of leaf/introduce/forget/edge/join; payload depends on it."""

    kind: str
    bag: frozenset[int]
    children: tuple[int, ...]
    vertex: int | None = None
    edge: int | None = None


@dataclass(frozen=True)
class NiceDecomposition:
    nodes: tuple[NiceNode, ...]
    root: int

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1


def nice_violation(g: Graph, nice: NiceDecomposition) -> str | None:
    """Structural checks for a nice decomposition of g."""
    seen_edges: dict[int, int] = {}
    for idx, nd in enumerate(nice.nodes):
        kids = [nice.nodes[c] for c in nd.children]
        if nd.kind == "leaf":
            if nd.bag or kids:
                return f"node {idx}: leaf must be empty and childless"
        elif nd.kind == "introduce":
            if len(kids) != 1 or nd.vertex is None:
                return f"node {idx}: malformed introduce"
            if nd.bag != kids[0].bag | {nd.vertex} or nd.vertex in kids[0].bag:
                return f"node {idx}: introduce bag mismatch"
        elif nd.kind == "forget":
            if len(kids) != 1 or nd.vertex is None:
                return f"node {idx}: malformed forget"
            if nd.bag != kids[0].bag - {nd.vertex} or nd.vertex not in kids[0].bag:
                return f"node {idx}: forget bag mismatch"
        elif nd.kind == "edge":
            if len(kids) != 1 or nd.edge is None:
                return f"node {idx}: malformed edge node"
            u, v = g.edges[nd.edge]
            if nd.bag != kids[0].bag or u not in nd.bag or v not in nd.bag:
                return f"node {idx}: edge {nd.edge} endpoints missing from bag"
            seen_edges[nd.edge] = seen_edges.get(nd.edge, 0) + 1
        elif nd.kind == "join":
            if len(kids) != 2:
                return f"node {idx}: join needs two children"
            if kids[0].bag != nd.bag or kids[1].bag != nd.bag:
                return f"node {idx}: join bags differ"
        else:
            return f"node {idx}: unknown kind {nd.kind}"
    if nice.nodes[nice.root].bag:
        return "root bag is not empty"
    for e in range(g.m):
        if seen_edges.get(e, 0) != 1:
            return f"edge {e} introduced {seen_edges.get(e, 0)} times"
    return None


class _NiceBuilder:
    def __init__(self):
        self.kinds: list[str] = []
        self.bags: list[frozenset[int]] = []
        self.children: list[list[int]] = []
        self.vertex: list[int | None] = []
        self.edge: list[int | None] = []

    def add(self, kind, bag, children=(), vertex=None, edge=None) -> int:
        self.kinds.append(kind)
        self.bags.append(frozenset(bag))
        self.children.append(list(children))
        self.vertex.append(vertex)
        self.edge.append(edge)
        return len(self.kinds) - 1

    def chain(self, below: int, target: frozenset[int]) -> int:
        cur, bag = below, self.bags[below]
        for v in sorted(bag - target):
            bag = bag - {v}
            cur = self.add("forget", bag, (cur,), vertex=v)
        for v in sorted(target - bag):
            bag = bag | {v}
            cur = self.add("introduce", bag, (cur,), vertex=v)
        return cur

    def from_empty(self, target: frozenset[int]) -> int:
        return self.chain(self.add("leaf", frozenset()), target)


def make_nice(g: Graph, td: TreeDecomposition) -> NiceDecomposition:
    """Binary nice form with one explicit introduction node per graph edge.

    Each edge goes to the topmost node whose bag holds both endpoints; the
    intersection of two occurrence subtrees is a subtree, so that node is
    unique and the assignment deterministic.
    """
    reason = td_violation(g, td)
    if reason is not None:
        raise InvalidDecompositionError(reason)
    b = len(td.bags)
    nbrs: list[list[int]] = [[] for _ in range(b)]
    for i, j in td.tree_edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    bld = _NiceBuilder()

    # iterative post-order over the rooted bag tree
    built: dict[int, int] = {}
    stack: list[tuple[int, int, bool]] = [(0, -1, False)]
    while stack:
        bag_idx, par, expanded = stack.pop()
        if not expanded:
            stack.append((bag_idx, par, True))
            for nxt in nbrs[bag_idx]:
                if nxt != par:
                    stack.append((nxt, bag_idx, False))
            continue
        target = td.bags[bag_idx]
        kid_tops = [bld.chain(built[c], target)
                    for c in nbrs[bag_idx] if c != par]
        if not kid_tops:
            built[bag_idx] = bld.from_empty(target)
        else:
            cur = kid_tops[0]
            for other in kid_tops[1:]:
                cur = bld.add("join", target, (cur, other))
            built[bag_idx] = cur
    root = bld.chain(built[0], frozenset())

    # hang edge nodes above their topmost eligible node
    parent_of: dict[int, int] = {}

    def recompute_parents():
        parent_of.clear()
        for idx, kids in enumerate(bld.children):
            for c in kids:
                parent_of[c] = idx

    def depth(idx: int) -> int:
        d = 0
        while idx in parent_of:
            idx = parent_of[idx]
            d += 1
        return d

    for e, (u, v) in enumerate(g.edges):
        recompute_parents()
        candidates = [i for i, bag in enumerate(bld.bags)
                      if u in bag and v in bag]
        if not candidates:
            raise InvalidDecompositionError(f"edge {e} fits in no nice bag")
        top = min(candidates, key=lambda i: (depth(i), i))
        node = bld.add("edge", bld.bags[top], (top,), edge=e)
        if top in parent_of:
            par = parent_of[top]
            bld.children[par][bld.children[par].index(top)] = node
        else:
            root = node

    nodes = tuple(
        NiceNode(k, bag, tuple(ch), vx, ed)
        for k, bag, ch, vx, ed in zip(bld.kinds, bld.bags, bld.children,
                                      bld.vertex, bld.edge)
    )
    nice = NiceDecomposition(nodes, root)
    reason = nice_violation(g, nice)
    if reason is not None:
        raise AssertionError(f"nice construction broke: {reason}")
    return nice


# -- the (S, R, P) dynamic program ----------------------------------------------

@lru_cache(maxsize=None)
def _bell(n: int) -> int:
    if n == 0:
        return 1
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return sum(row) if n > 1 else 1


def _state_bound(w: int) -> int:
    return (2 ** w) * _bell(w) * (2 ** w) * 2


EMPTY: frozenset = frozenset()
State = tuple  # (S, R, P, done)


def _join_partitions(s: frozenset, r1: frozenset, r2: frozenset) -> frozenset:
    parent = {v: v for v in s}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in (r1, r2):
        for block in r:
            it = iter(block)
            first = next(it)
            for other in it:
                parent[find(other)] = find(first)
    blocks: dict = {}
    for v in s:
        blocks.setdefault(find(v), set()).add(v)
    return frozenset(frozenset(b) for b in blocks.values())


def des_dp(g: Graph, nice: NiceDecomposition) -> SolveResult:
    """Decide existence of a dominating Eulerian subgraph over the nice tree.

    Accepts at the empty root exactly the completed state; a trace-back then
    materializes the selected vertices and edges, which are validated before
    being returned. The per-node state count is guarded by the
    2^w * Bell(w) * 2^w * 2 bound.
    """
    started = time.perf_counter()
    reason = nice_violation(g, nice)
    if reason is not None:
        raise InvalidDecompositionError(reason)
    tables: dict[int, dict[State, tuple]] = {}
    nodes_touched = 0

    order = _postorder(nice)
    for idx in order:
        nd = nice.nodes[idx]
        table: dict[State, tuple] = {}

        def put(state: State, back: tuple):
            if state not in table:
                table[state] = back

        if nd.kind == "leaf":
            put((EMPTY, EMPTY, EMPTY, False), ("leaf",))
        elif nd.kind == "introduce":
            v = nd.vertex
            for st, _ in tables[nd.children[0]].items():
                s, r, p, done = st
                put(st, ("skip", st))
                if not done:
                    put((s | {v}, r | {frozenset((v,))}, p, False),
                        ("select", st))
        elif nd.kind == "forget":
            v = nd.vertex
            for st, _ in tables[nd.children[0]].items():
                s, r, p, done = st
                if v not in s:
                    put(st, ("keep", st))
                    continue
                if v in p:
                    continue  # never forget an odd vertex
                block = next(b for b in r if v in b)
                if len(block) > 1:
                    nr = (r - {block}) | {block - {v}}
                    put((s - {v}, nr, p, done), ("keep", st))
                elif len(r) == 1:
                    # the whole component retires; nothing may start afterwards
                    put((EMPTY, EMPTY, EMPTY, True), ("keep", st))
                # else: the last bag vertex of an unfinished side component
            # is lost for good: reject by adding nothing
        elif nd.kind == "edge":
            u, v = g.edges[nd.edge]
            for st, _ in tables[nd.children[0]].items():
                s, r, p, done = st
                if u not in s and v not in s:
                    continue  # uncovered edge kills the state
                put(st, ("skip", st))
                if u in s and v in s:
                    np = p ^ {u, v}
                    nr = _join_partitions(s, r, frozenset((frozenset((u, v)),)))
                    put((s, nr, frozenset(np), done), ("take", st))
        elif nd.kind == "join":
            left, right = nd.children
            by_s: dict = {}
            for st in tables[right]:
                by_s.setdefault(st[0], []).append(st)
            for st1 in tables[left]:
                s1, r1, p1, d1 = st1
                for st2 in by_s.get(s1, ()):
                    s2, r2, p2, d2 = st2
                    if d1 and d2:
                        continue
                    if (d1 or d2) and s1:
                        continue
                    nr = _join_partitions(s1, r1, r2)
                    put((s1, nr, p1 ^ p2, d1 or d2), ("join", st1, st2))
        else:  # pragma: no cover
            raise AssertionError(nd.kind)

        w = len(nd.bag)
        if len(table) > _state_bound(w):
            raise AssertionError(
                f"state table exceeded the 2^w B(w) 2^w 2 bound at width {w}"
            )
        nodes_touched += len(table)
        tables[idx] = table

    accept = (EMPTY, EMPTY, EMPTY, True)
    if accept not in tables[nice.root]:
        return no_result(nodes_touched, started)

    v0: set[int] = set()
    e0: set[int] = set()

    def walk(idx: int, state: State):
        nd = nice.nodes[idx]
        back = tables[idx][state]
        tag = back[0]
        if tag == "leaf":
            return
        if tag == "select":
            v0.add(nd.vertex)
            walk(nd.children[0], back[1])
        elif tag == "take":
            e0.add(nd.edge)
            walk(nd.children[0], back[1])
        elif tag in ("skip", "keep"):
            walk(nd.children[0], back[1])
        elif tag == "join":
            walk(nd.children[0], back[1])
            walk(nd.children[1], back[2])
        else:  # pragma: no cover
            raise AssertionError(tag)

    import sys
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * len(nice.nodes) + 100))
    try:
        walk(nice.root, accept)
    finally:
        sys.setrecursionlimit(old_limit)
    sol = DesSolution(frozenset(v0), frozenset(e0))
    return yes_des(g, sol, nodes_touched, started)


def _postorder(nice: NiceDecomposition) -> list[int]:
    out: list[int] = []
    stack: list[tuple[int, bool]] = [(nice.root, False)]
    while stack:
        idx, expanded = stack.pop()
        if expanded:
            out.append(idx)
            continue
        stack.append((idx, True))
        for c in nice.nodes[idx].children:
            stack.append((c, False))
    return out


def decide_ehc_tw(g: Graph, td: TreeDecomposition | None = None) -> bool:
    """Edge-Hamiltonian cycle via the subgraph DP; m < 3 uses the conventions."""
    trivial = trivial_edge_ham(g, "cycle")
    if trivial is not None:
        return trivial[0]
    if td is None:
        td = min_fill_decomposition(g)
    reason = td_violation(g, td)
    if reason is not None:
        raise InvalidDecompositionError(reason)
    return des_dp(g, make_nice(g, td)).is_yes
