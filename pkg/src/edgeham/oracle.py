"""Ground-truth brute-force solvers used to certify the parameterized solvers.

Everything here is exhaustive and capped: edge-permutation questions go
through a bitmask DP on the line graph, dominating-Eulerian-subgraph
questions enumerate edge subsets by increasing size, and treewidth is an
elimination-ordering subset DP. Caps are configuration, never silent
truncation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .core import (
    AnyGraph,
    DesSolution,
    EdgeSeq,
    Graph,
    Mode,
    des_violation,
    trivial_edge_ham,
    validate_edge_sequence,
)
from .errors import (
    InstanceTooLargeError,
    SearchBudgetExceededError,
    TooFewEdgesError,
)

DEFAULT_EDGE_CAP = 22
DEFAULT_DES_CAP = 20
DEFAULT_BICLIQUE_BUDGET = 1_000_000


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solver run.

    answer is "yes", "no" or (for the one-sided hypergraph solver)
    "probably-no". A yes always carries a certificate that was validated
    against the instance before the result was constructed.
    """

    answer: str
    certificate: EdgeSeq | DesSolution | None
    nodes: int
    elapsed: float

    @property
    def is_yes(self) -> bool:
        return self.answer == "yes"


def yes_edge_seq(g: AnyGraph, order: tuple[int, ...], mode: Mode,
                 nodes: int, started: float) -> SolveResult:
    seq = EdgeSeq(order, mode)
    if not validate_edge_sequence(g, seq):
        raise AssertionError("solver produced an invalid edge sequence")
    return SolveResult("yes", seq, nodes, time.perf_counter() - started)


def yes_des(g: Graph, sol: DesSolution, nodes: int, started: float) -> SolveResult:
    reason = des_violation(g, sol)
    if reason is not None:
        raise AssertionError(f"solver produced an invalid subgraph: {reason}")
    return SolveResult("yes", sol, nodes, time.perf_counter() - started)


def no_result(nodes: int, started: float, answer: str = "no") -> SolveResult:
    return SolveResult(answer, None, nodes, time.perf_counter() - started)


def line_adjacency_masks(g: AnyGraph) -> list[int]:
    """Bitmask adjacency of the line graph: bit j set in adj[i] iff edges share."""
    m = g.m
    by_vertex: dict[int, int] = {}
    for i in range(m):
        for v in g.edge_vertices(i):
            by_vertex[v] = by_vertex.get(v, 0) | (1 << i)
    adj = [0] * m
    for i in range(m):
        a = 0
        for v in g.edge_vertices(i):
            a |= by_vertex[v]
        adj[i] = a & ~(1 << i)
    return adj


def _ham_dp(adj: list[int], mode: Mode) -> tuple[tuple[int, ...] | None, int]:
    """Hamiltonian path/cycle on an adjacency-bitmask graph with >= 3 vertices.

    dp[mask] holds the set (as a bitmask) of feasible last vertices for a
    walk visiting exactly `mask`. Cycles are rooted at vertex 0. Ties break
    toward the lowest index so certificates are reproducible.
    """
    m = len(adj)
    full = (1 << m) - 1
    dp = [0] * (full + 1)
    if mode == "cycle":
        dp[1] = 1
    else:
        for v in range(m):
            dp[1 << v] = 1 << v
    nodes = 0
    for mask in range(1, full + 1):
        lasts = dp[mask]
        if not lasts:
            continue
        nodes += 1
        if mask == full:
            break
        cand = 0
        t = lasts
        while t:
            b = t & -t
            cand |= adj[b.bit_length() - 1]
            t ^= b
        cand &= ~mask
        t = cand
        while t:
            b = t & -t
            dp[mask | b] |= b
            t ^= b
    finals = dp[full]
    if mode == "cycle":
        finals &= adj[0]
    if not finals:
        return None, nodes
    # walk backwards, lowest feasible predecessor first
    last = (finals & -finals).bit_length() - 1
    order = [last]
    mask = full
    while mask != (1 << order[-1]):
        prev_mask = mask ^ (1 << order[-1])
        options = dp[prev_mask] & adj[order[-1]]
        if not options:
            raise AssertionError("broken DP traceback")
        order.append((options & -options).bit_length() - 1)
        mask = prev_mask
    order.reverse()
    return tuple(order), nodes


def solve_edge_ham_exact(g: AnyGraph, mode: Mode,
                         cap: int = DEFAULT_EDGE_CAP) -> SolveResult:
    """Exact edge-Hamiltonian path/cycle via Hamiltonicity of the line graph."""
    started = time.perf_counter()
    if g.m > cap:
        raise InstanceTooLargeError(f"m={g.m} exceeds the oracle cap {cap}")
    trivial = trivial_edge_ham(g, mode)
    if trivial is not None:
        ans, order = trivial
        if ans:
            return yes_edge_seq(g, order, mode, 0, started)
        return no_result(0, started)
    order, nodes = _ham_dp(line_adjacency_masks(g), mode)
    if order is None:
        return no_result(nodes, started)
    return yes_edge_seq(g, order, mode, nodes, started)


def vertex_ham_exact(g: Graph, mode: Mode) -> bool:
    """Vertex Hamiltonicity of a plain graph; used for cross-checks."""
    if g.n == 0:
        return True
    if g.n == 1:
        return True
    if g.n == 2:
        return g.m == 1 if mode == "path" else False
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    order, _ = _ham_dp(adj, mode)
    return order is not None


def solve_des_exact(g: Graph, cap: int = DEFAULT_DES_CAP) -> SolveResult:
    """Exhaustive dominating-Eulerian-subgraph search, smallest edge set first."""
    from itertools import combinations

    started = time.perf_counter()
    m = g.m
    if m > cap:
        raise InstanceTooLargeError(f"m={m} exceeds the subgraph cap {cap}")
    nodes = 0
    # the zero-edge convention: one vertex covering everything
    for v in range(g.n):
        nodes += 1
        if all(v in g.edge_vertices(e) for e in range(m)):
            return yes_des(g, DesSolution(frozenset((v,)), frozenset()), nodes, started)
    emask = [0] * m
    for i, (u, v) in enumerate(g.edges):
        emask[i] = (1 << u) | (1 << v)
    for size in range(3, m + 1):
        for combo in combinations(range(m), size):
            nodes += 1
            parity = 0
            for e in combo:
                parity ^= emask[e]
            if parity:
                continue
            v0 = set()
            for e in combo:
                v0.update(g.edges[e])
            if any(u not in v0 and v not in v0 for u, v in g.edges):
                continue
            sol = DesSolution(frozenset(v0), frozenset(combo))
            if des_violation(g, sol) is None:
                return yes_des(g, sol, nodes, started)
    return no_result(nodes, started)


def check_hn_equivalence(g: Graph, edge_cap: int = DEFAULT_EDGE_CAP,
                         des_cap: int = DEFAULT_DES_CAP) -> bool:
    """Do the edge-cycle oracle and the subgraph oracle agree on g (m >= 3)?"""
    if g.m < 3:
        raise TooFewEdgesError("equivalence is only asserted for m >= 3")
    a = solve_edge_ham_exact(g, "cycle", cap=edge_cap).is_yes
    b = solve_des_exact(g, cap=des_cap).is_yes
    return a == b


@dataclass(frozen=True)
class TreewidthResult:
    width: int
    elimination_order: tuple[int, ...]


def exact_treewidth_small(g: Graph, max_n: int = 15) -> TreewidthResult:
    """Exact treewidth by subset DP over elimination orderings (n <= max_n)."""
    n = g.n
    if n > max_n:
        raise InstanceTooLargeError(f"n={n} exceeds the treewidth cap {max_n}")
    if n == 0:
        return TreewidthResult(-1, ())
    adj = [0] * n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    def elim_degree(done: int, v: int) -> int:
        # neighbors of v outside `done`, where paths through `done` count
        seen = adj[v] | (1 << v)
        frontier = adj[v] & done
        reach = adj[v]
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            u = b.bit_length() - 1
            new = adj[u] & ~seen
            seen |= new
            reach |= new
            frontier |= new & done
        return bin(reach & ~done & ~(1 << v)).count("1")

    full = (1 << n) - 1
    INF = n + 1
    best = [INF] * (full + 1)
    pick = [-1] * (full + 1)
    best[0] = -1  # width of eliminating nothing
    for mask in range(1, full + 1):
        t = mask
        while t:
            b = t & -t
            t ^= b
            v = b.bit_length() - 1
            prev = best[mask ^ b]
            if prev >= best[mask]:
                continue
            w = max(prev, elim_degree(mask ^ b, v))
            if w < best[mask]:
                best[mask] = w
                pick[mask] = v
    order = []
    mask = full
    while mask:
        v = pick[mask]
        order.append(v)
        mask ^= 1 << v
    order.reverse()
    return TreewidthResult(best[full], tuple(order))


def find_biclique(g: Graph, t: int,
                  budget: int = DEFAULT_BICLIQUE_BUDGET) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Disjoint A, B with |A| = |B| = t and all A-B pairs edges, or None.

    Exact branch-and-prune over candidate left sides; vertices enter A in
    ascending order so the first hit is deterministic.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    n = g.n
    adj = [0] * n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    nodes = 0

    def rec(a_list: list[int], a_mask: int, common: int, start: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceededError(f"biclique search exceeded {budget} nodes")
        if len(a_list) == t:
            avail = common & ~a_mask
            if bin(avail).count("1") >= t:
                b = []
                while len(b) < t:
                    bit = avail & -avail
                    b.append(bit.bit_length() - 1)
                    avail ^= bit
                return tuple(a_list), tuple(b)
            return None
        for v in range(start, n):
            if n - v < t - len(a_list):
                break
            new_common = common & adj[v]
            if bin(new_common & ~(a_mask | (1 << v))).count("1") < t:
                continue
            got = rec(a_list + [v], a_mask | (1 << v), new_common, v + 1)
            if got is not None:
                return got
        return None

    return rec([], 0, (1 << n) - 1, 0)


def smallest_biclique_free_t(g: Graph, budget: int = DEFAULT_BICLIQUE_BUDGET) -> int:
    """Smallest t for which g has no t-by-t complete bipartite subgraph."""
    t = 1
    while True:
        if find_biclique(g, t, budget=budget) is None:
            return t
        t += 1
