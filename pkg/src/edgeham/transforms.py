"""Gadgets exchanging the path and cycle variants of edge Hamiltonicity.

Fresh vertices are appended after the existing id space and gadget edges
after the existing edges, so original edge indices stay stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import Graph, Mode, trivial_edge_ham
from .errors import SameVertexError, VertexOutOfRangeError


@dataclass(frozen=True)
class GadgetTrace:
    base_vertex_count: int
    added_vertices: tuple[int, ...]
    added_edges: tuple[int, ...]
    anchor: tuple[int, ...]


def ehp_to_ehc_gadget(g: Graph, u: int, v: int) -> tuple[Graph, GadgetTrace]:
    """Attach a 3-edge path u-x-y-v through two fresh vertices.

    The result has an edge-Hamiltonian cycle exactly when g has an
    edge-Hamiltonian path whose first edge contains u and last contains v.
    """
    if u == v:
        raise SameVertexError("gadget endpoints must differ")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise VertexOutOfRangeError(f"anchor ({u},{v}) outside 0..{g.n - 1}")
    x, y = g.n, g.n + 1
    edges = g.edges + ((u, x), (x, y), (min(y, v), max(y, v)))
    out = Graph(g.n + 2, edges)
    m = g.m
    return out, GadgetTrace(g.n, (x, y), (m, m + 1, m + 2), (u, v))


def ehc_to_ehp_gadget(g: Graph, u: int) -> tuple[Graph, GadgetTrace]:
    """Attach two fresh 2-edge paths u-a-b and u-c-d.

    The result has an edge-Hamiltonian path exactly when g has an
    edge-Hamiltonian cycle whose first and last edges both contain u.
    """
    if not (0 <= u < g.n):
        raise VertexOutOfRangeError(f"anchor {u} outside 0..{g.n - 1}")
    a, b, c, d = g.n, g.n + 1, g.n + 2, g.n + 3
    edges = g.edges + ((u, a), (a, b), (u, c), (c, d))
    out = Graph(g.n + 4, edges)
    m = g.m
    return out, GadgetTrace(g.n, (a, b, c, d), (m, m + 1, m + 2, m + 3), (u,))


def decide_via_transform(g: Graph, want: Mode,
                         inner_solver: Callable[[Graph], bool]) -> bool:
    """Decide one variant by calling a solver for the opposite variant.

    inner_solver must decide, exactly, the cycle variant when want == "path"
    and the path variant when want == "cycle". Anchors are tried in
    lexicographic order with a short-circuit on the first yes. Degenerate
    instances (m <= 2) use the shared conventions directly; the gadget
    equivalence is only meaningful beyond them.
    """
    trivial = trivial_edge_ham(g, want)
    if trivial is not None:
        return trivial[0]
    if want == "path":
        for u in range(g.n):
            for v in range(g.n):
                if u == v:
                    continue
                if inner_solver(ehp_to_ehc_gadget(g, u, v)[0]):
                    return True
        return False
    for u in range(g.n):
        if inner_solver(ehc_to_ehp_gadget(g, u)[0]):
            return True
    return False
