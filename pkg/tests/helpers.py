"""Shared brute-force reference implementations for the test suite.

These stay deliberately naive (permutations, bitmask subsets) so they can
certify the real solvers without sharing any code paths with them.
"""

from itertools import combinations, permutations

from edgeham.core import AnyGraph, EdgeSeq, Graph, validate_edge_sequence
from edgeham.generators import generate_family
from edgeham.rng import SplitMix64, mix


def brute_edge_ham(g: AnyGraph, mode: str) -> bool:
    """Try every permutation of the edges; usable up to ~7 edges."""
    m = g.m
    if m <= 1:
        return True
    for perm in permutations(range(m)):
        if validate_edge_sequence(g, EdgeSeq(perm, mode)):
            return True
    return False


def brute_vertex_cover_size(g: Graph) -> int:
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            s = set(combo)
            if all(u in s or v in s for u, v in g.edges):
                return size
    return g.n


def random_graph(seed: int, n_lo=4, n_hi=8, m_lo=3, m_hi=10) -> Graph:
    rng = SplitMix64(mix(seed, 0x51))
    n = n_lo + rng.randrange(n_hi - n_lo + 1)
    max_m = n * (n - 1) // 2
    m = min(max_m, m_lo + rng.randrange(m_hi - m_lo + 1))
    g, _ = generate_family(f"gnm {n} {m}", seed=seed)
    return g
