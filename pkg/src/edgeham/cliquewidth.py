"""Clique-width expressions and the biclique-elimination pipeline.

The pipeline rewrites a labeled-graph expression so that no single join
connects two sides of seven or more vertices, then retires label classes
that form large complete bipartite patterns gradually, and finally decides
the edge-Hamiltonian cycle question on the (now low-treewidth) result with
the subgraph dynamic program.

The underlying graph surgery replaces a complete A-B bipartite block by
three fresh vertices joined to all of A and B. It preserves the answer
whenever the pre-surgery graph contains all A-B pairs, even if some of
those pairs survive because another part of the expression rebuilds them;
every fired rewrite checks those side conditions on the evaluated graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import DesSolution, Graph, des_violation
from .errors import (
    AugmentationStuckError,
    GenerationFailedError,
    InvalidSolutionError,
    JoinSameLabelError,
    LabelOutOfBudgetError,
    NotABicliqueError,
    PreconditionError,
    SetsTooSmallError,
)
from .oracle import exact_treewidth_small
from .rng import SplitMix64, mix
from .treewidth import (
    TreeDecomposition,
    decide_ehc_tw,
    decomposition_from_elimination,
    min_fill_decomposition,
)

CONTAIN_MIN = 3       # side sizes needed to force a subgraph to absorb A and B
REDUCE_MIN = 5        # side sizes needed for the three-vertex replacement
JOIN_SMALL_SIDE = 6   # a join is acceptable when one side is at most this
SPLICE_MIN = 7        # class/neighborhood sizes that trigger a rewrite
BICLIQUE_FREE_FACTOR = 21  # the pipeline output avoids K_{21k,21k}


# -- expression trees ------------------------------------------------------------

class CwNode:
    __slots__ = ()


class CwIntro(CwNode):
    __slots__ = ("label",)

    def __init__(self, label: int):
        self.label = label


class CwUnion(CwNode):
    __slots__ = ("left", "right")

    def __init__(self, left: CwNode, right: CwNode):
        self.left = left
        self.right = right


class CwRename(CwNode):
    __slots__ = ("old", "new", "child")

    def __init__(self, old: int, new: int, child: CwNode):
        self.old = old
        self.new = new
        self.child = child


class CwJoin(CwNode):
    __slots__ = ("a", "b", "child")

    def __init__(self, a: int, b: int, child: CwNode):
        self.a = a
        self.b = b
        self.child = child


@dataclass(frozen=True)
class CwExpr:
    root: CwNode
    budget: int

    def validate(self) -> None:
        for node in postorder_nodes(self.root):
            if isinstance(node, CwIntro):
                labels = (node.label,)
            elif isinstance(node, CwRename):
                labels = (node.old, node.new)
            elif isinstance(node, CwJoin):
                if node.a == node.b:
                    raise JoinSameLabelError("join needs two distinct labels")
                labels = (node.a, node.b)
            else:
                labels = ()
            for lab in labels:
                if not (1 <= lab <= self.budget):
                    raise LabelOutOfBudgetError(
                        f"label {lab} outside 1..{self.budget}"
                    )


def children_of(node: CwNode) -> tuple[CwNode, ...]:
    if isinstance(node, CwUnion):
        return (node.left, node.right)
    if isinstance(node, (CwRename, CwJoin)):
        return (node.child,)
    return ()


def postorder_nodes(root: CwNode) -> list[CwNode]:
    out: list[CwNode] = []
    stack: list[tuple[CwNode, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            out.append(node)
            continue
        stack.append((node, True))
        for c in reversed(children_of(node)):
            stack.append((c, False))
    return out


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: dict


@dataclass(frozen=True)
class NodeFacts:
    vertices: frozenset[int]
    classes: dict
    edges: frozenset


@dataclass(frozen=True)
class EvalInfo:
    order: tuple[CwNode, ...]
    facts: dict           # id(node) -> NodeFacts
    intro_nodes: tuple[CwNode, ...]
    result: LabeledGraph


def eval_cwe_full(e: CwExpr | CwNode) -> EvalInfo:
    """Evaluate with per-node vertex sets, label classes and edge sets.

    Vertex ids are assigned to introduction leaves in left-to-right order.
    A join adds every missing pair between its two (possibly empty) classes.
    """
    root = e.root if isinstance(e, CwExpr) else e
    order = postorder_nodes(root)
    facts: dict = {}
    intro_nodes: list[CwNode] = []
    next_id = 0
    for node in order:
        if isinstance(node, CwIntro):
            vid = next_id
            next_id += 1
            intro_nodes.append(node)
            facts[id(node)] = NodeFacts(
                frozenset((vid,)), {node.label: frozenset((vid,))}, frozenset()
            )
        elif isinstance(node, CwUnion):
            fl, fr = facts[id(node.left)], facts[id(node.right)]
            classes = dict(fl.classes)
            for lab, vs in fr.classes.items():
                classes[lab] = classes.get(lab, frozenset()) | vs
            facts[id(node)] = NodeFacts(
                fl.vertices | fr.vertices, classes, fl.edges | fr.edges
            )
        elif isinstance(node, CwRename):
            f = facts[id(node.child)]
            classes = dict(f.classes)
            moved = classes.pop(node.old, frozenset())
            if moved:
                classes[node.new] = classes.get(node.new, frozenset()) | moved
            facts[id(node)] = NodeFacts(f.vertices, classes, f.edges)
        elif isinstance(node, CwJoin):
            f = facts[id(node.child)]
            ca = f.classes.get(node.a, frozenset())
            cb = f.classes.get(node.b, frozenset())
            new_edges = set(f.edges)
            for u in ca:
                for v in cb:
                    new_edges.add((u, v) if u < v else (v, u))
            facts[id(node)] = NodeFacts(f.vertices, dict(f.classes),
                                        frozenset(new_edges))
        else:  # pragma: no cover
            raise AssertionError(type(node))
    top = facts[id(root)]
    graph = Graph(next_id, tuple(sorted(top.edges)))
    labels = {}
    for lab, vs in top.classes.items():
        for v in vs:
            labels[v] = lab
    return EvalInfo(tuple(order), facts, tuple(intro_nodes),
                    LabeledGraph(graph, labels))


def eval_cwe(e: CwExpr | CwNode) -> LabeledGraph:
    return eval_cwe_full(e).result


def _replace(root: CwNode, target: CwNode, replacement: CwNode) -> CwNode:
    """New tree with `target` swapped for `replacement`, sharing other nodes."""
    if root is target:
        return replacement
    parent: dict = {}
    stack = [root]
    while stack:
        node = stack.pop()
        for c in children_of(node):
            parent[id(c)] = node
            stack.append(c)
    if id(target) not in parent:
        raise ValueError("target is not in the tree")
    chain = [target]
    while chain[-1] is not root:
        chain.append(parent[id(chain[-1])])
    new = replacement
    for node in chain[1:]:
        old = chain[chain.index(node) - 1]
        if isinstance(node, CwUnion):
            new = CwUnion(new if node.left is old else node.left,
                          new if node.right is old else node.right)
        elif isinstance(node, CwRename):
            new = CwRename(node.old, node.new, new)
        elif isinstance(node, CwJoin):
            new = CwJoin(node.a, node.b, new)
        else:  # pragma: no cover
            raise AssertionError(type(node))
    return new


# -- graph-level surgery and solution transfer ----------------------------------

@dataclass(frozen=True)
class ReductionSite:
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    stage: str


def _check_biclique(g: Graph, a, b, minimum: int) -> None:
    sa, sb = set(a), set(b)
    if sa & sb:
        raise NotABicliqueError("the two sides overlap")
    if len(sa) < minimum or len(sb) < minimum:
        raise SetsTooSmallError(f"both sides need at least {minimum} vertices")
    for u in sa:
        for v in sb:
            if not g.has_edge(u, v):
                raise NotABicliqueError(f"missing edge ({u},{v})")


def reduce_biclique_graph(g: Graph, a, b) -> tuple[Graph, ReductionSite]:
    """Replace the complete A-B block by three fresh all-connected vertices."""
    _check_biclique(g, a, b, REDUCE_MIN)
    sa, sb = set(a), set(b)
    c = (g.n, g.n + 1, g.n + 2)
    kept = [
        (u, v) for u, v in g.edges
        if not ((u in sa and v in sb) or (u in sb and v in sa))
    ]
    gadget = [(u, x) for x in c for u in sorted(sa)] + \
             [(u, x) for x in c for u in sorted(sb)]
    out = Graph(g.n + 3, tuple(kept) + tuple(sorted(gadget)))
    return out, ReductionSite(tuple(sorted(sa)), tuple(sorted(sb)), c, "bigjoin")


def _pair_index(g: Graph) -> dict:
    return {tuple(sorted(p)): i for i, p in enumerate(g.edges)}


def _endpoints(g: Graph, e0) -> frozenset[int]:
    out: set[int] = set()
    for e in e0:
        out.update(g.edges[e])
    return frozenset(out)


def _components(g: Graph, v0: frozenset[int], e0) -> int:
    parent = {v: v for v in v0}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in e0:
        u, v = g.edges[e]
        parent[find(u)] = find(v)
    return len({find(v) for v in v0})


def repair_contain(g: Graph, a, b, sol: DesSolution) -> DesSolution:
    """Edit a valid solution until it contains A and B and uses an A-B edge.

    Every edit toggles the four edges between two vertices per side, which
    preserves parities; each step is re-validated, so a broken step surfaces
    immediately instead of corrupting the result.
    """
    _check_biclique(g, a, b, CONTAIN_MIN)
    if des_violation(g, sol) is not None:
        raise PreconditionError("input solution is invalid")
    pidx = _pair_index(g)
    e0 = set(sol.e0)
    if not e0:
        # a single vertex cannot cover a 3x3 biclique, so this cannot happen
        raise PreconditionError("single-vertex solution cannot meet the biclique")

    def flip(u, v):
        i = pidx[(u, v) if u < v else (v, u)]
        e0.symmetric_difference_update((i,))

    def current() -> DesSolution:
        return DesSolution(_endpoints(g, e0), frozenset(e0))

    def step(pairs):
        for u, v in pairs:
            flip(u, v)
        reason = des_violation(g, current())
        if reason is not None:
            raise AssertionError(f"containment edit broke the solution: {reason}")

    sa, sb = sorted(set(a)), sorted(set(b))
    while True:
        v0 = _endpoints(g, e0)
        miss_a = [v for v in sa if v not in v0]
        miss_b = [v for v in sb if v not in v0]
        if not miss_a and not miss_b:
            break
        if miss_a and miss_b:
            raise AssertionError("a vertex cover must contain one full side")
        xs, ys, miss = (sa, sb, miss_a) if miss_a else (sb, sa, miss_b)
        if len(miss) >= 2:
            v1, v2 = miss[:2]
            u1, u2 = ys[0], ys[1]
            step(((u1, v1), (u1, v2), (u2, v1), (u2, v2)))
            continue
        v1 = miss[0]
        found = None
        for u1 in ys:
            for v2 in xs:
                if v2 == v1:
                    continue
                i = pidx[(u1, v2) if u1 < v2 else (v2, u1)]
                if i not in e0:
                    found = (u1, v2)
                    break
            if found:
                break
        if found:
            u1, v2 = found
            u2 = next(u for u in ys if u != u1)
        else:
            u1, u2 = ys[0], ys[1]
            v2 = next(v for v in xs if v != v1)
        step(((u1, v1), (u1, v2), (u2, v1), (u2, v2)))

    uses_ab = any(
        (g.edges[e][0] in set(sa) and g.edges[e][1] in set(sb))
        or (g.edges[e][0] in set(sb) and g.edges[e][1] in set(sa))
        for e in e0
    )
    if not uses_ab:
        v1, v2 = sa[0], sa[1]
        u1, u2 = sb[0], sb[1]
        step(((u1, v1), (u1, v2), (u2, v1), (u2, v2)))
    out = current()
    if des_violation(g, out) is not None:  # pragma: no cover
        raise AssertionError("containment repair produced an invalid solution")
    return out


def _augment_connected(g: Graph, v0: frozenset[int], e0: set,
                       xs: list[int], ys: list[int]) -> None:
    """Merge components by toggling 2x2 blocks of the xs-ys biclique in place.

    Tries every candidate block and keeps the first one that strictly lowers
    the component count; the biclique sizes guarantee one exists, so a full
    sweep without progress is an implementation bug, not an instance issue.
    """
    pidx = _pair_index(g)

    def comps(edges) -> int:
        return _components(g, v0, edges)

    while True:
        base = comps(e0)
        if base <= 1:
            return
        improved = False
        for side, other in ((xs, ys), (ys, xs)):
            for i1 in range(len(side)):
                for i2 in range(i1 + 1, len(side)):
                    for j1 in range(len(other)):
                        for j2 in range(j1 + 1, len(other)):
                            quad = [
                                pidx[tuple(sorted((side[i1], other[j1])))],
                                pidx[tuple(sorted((side[i1], other[j2])))],
                                pidx[tuple(sorted((side[i2], other[j1])))],
                                pidx[tuple(sorted((side[i2], other[j2])))],
                            ]
                            trial = set(e0)
                            trial.symmetric_difference_update(quad)
                            if comps(trial) < base:
                                e0.clear()
                                e0.update(trial)
                                improved = True
                                break
                        if improved:
                            break
                    if improved:
                        break
                if improved:
                    break
            if improved:
                break
        if not improved:
            raise AugmentationStuckError(
                "no 2x2 toggle lowers the component count"
            )


def transfer_des_across_reduction(direction: str, site: ReductionSite,
                                  g: Graph, g2: Graph,
                                  sol: DesSolution) -> DesSolution:
    """Carry a dominating Eulerian subgraph across the three-vertex surgery.

    forward: from the biclique graph g to the reduced graph g2. Used A-B
    edges are exchanged for their three length-2 detours through C with
    toggle semantics (so shared endpoints keep their parity), then the
    component count is driven to one inside the (A u B) x C biclique.

    backward: from g2 to g. After forcing A, B and C into the solution,
    C and its edges are dropped, parities are restored by flipping shortest
    paths inside the A x B biclique, and connectivity is restored the same
    way as above.
    """
    a, b, c = list(site.a), list(site.b), list(site.c)
    ab = sorted(set(a) | set(b))
    if direction == "forward":
        if des_violation(g, sol) is not None:
            raise InvalidSolutionError("forward transfer needs a valid source")
        sol = repair_contain(g, a, b, sol)
        sa, sb = set(a), set(b)
        pidx2 = _pair_index(g2)
        e0 = set()
        used: list[tuple[int, int]] = []
        for e in sol.e0:
            u, v = g.edges[e]
            if (u in sa and v in sb) or (u in sb and v in sa):
                used.append((u, v))
            else:
                e0.add(pidx2[(u, v) if u < v else (v, u)])
        for u, v in used:
            for x in c:
                for pair in ((u, x), (v, x)):
                    idx = pidx2[tuple(sorted(pair))]
                    e0.symmetric_difference_update((idx,))
        v0 = frozenset(sol.v0 | set(c))
        deg: dict[int, int] = {}
        for e in e0:
            for w in g2.edges[e]:
                deg[w] = deg.get(w, 0) + 1
        if any(d % 2 for d in deg.values()):  # pragma: no cover
            raise AssertionError("detour exchange broke a parity")
        _augment_connected(g2, v0, e0, ab, c)
        out = DesSolution(v0, frozenset(e0))
        if des_violation(g2, out) is not None:  # pragma: no cover
            raise AssertionError("forward transfer failed validation")
        return out

    if direction != "backward":
        raise ValueError("direction must be forward or backward")
    if des_violation(g2, sol) is not None:
        raise InvalidSolutionError("backward transfer needs a valid source")
    sol = repair_contain(g2, c, ab, sol)
    cset = set(c)
    pidx = _pair_index(g)
    e0: set[int] = set()
    c_edges = 0
    for e in sol.e0:
        u, v = g2.edges[e]
        if u in cset or v in cset:
            c_edges += 1
            continue
        e0.add(pidx[(u, v) if u < v else (v, u)])
    if c_edges % 2:  # pragma: no cover
        raise AssertionError("odd number of edges met the independent set C")
    v0 = frozenset(sol.v0 - cset)

    def odd_vertices() -> list[int]:
        deg: dict[int, int] = {}
        for e in e0:
            for w in g.edges[e]:
                deg[w] = deg.get(w, 0) + 1
        return sorted(w for w, d in deg.items() if d % 2)

    sa, sb = set(a), set(b)
    odd = odd_vertices()
    if any(w not in sa and w not in sb for w in odd):  # pragma: no cover
        raise AssertionError("odd parities leaked outside the biclique")
    while odd:
        x, y = odd[0], odd[1]
        if (x in sa) == (y in sa):
            mid = b[0] if x in sa else a[0]
            path = ((x, mid), (mid, y))
        else:
            path = ((x, y),)
        for u, v in path:
            idx = pidx[(u, v) if u < v else (v, u)]
            e0.symmetric_difference_update((idx,))
        odd = odd_vertices()
    _augment_connected(g, v0, e0, sorted(sa), sorted(sb))
    out = DesSolution(v0, frozenset(e0))
    if des_violation(g, out) is not None:  # pragma: no cover
        raise AssertionError("backward transfer failed validation")
    return out


# -- expression rewrites ----------------------------------------------------------

@dataclass(frozen=True)
class RewriteEvent:
    """One fired rewrite with the evaluated graphs aligned to common ids.

    `before` is the pre-rewrite graph relabeled into the post-rewrite id
    space (the three C vertices exist but are isolated in it), so the two
    graphs and the site can feed the solution-transfer machinery directly.
    `mapping` sends each pre-rewrite vertex id to its post-rewrite id.
    """

    stage: str
    site: ReductionSite | None
    before: Graph
    after: Graph
    mapping: dict

    def __post_init__(self):
        if self.site is None:
            if set(self.before.edges) != set(self.after.edges):
                raise AssertionError("no-op removal changed the graph")
            return
        sa, sb, sc = set(self.site.a), set(self.site.b), set(self.site.c)
        before_set = {tuple(sorted(p)) for p in self.before.edges}
        after_set = {tuple(sorted(p)) for p in self.after.edges}
        ab_pairs = {tuple(sorted((u, v))) for u in sa for v in sb}
        gadget = {tuple(sorted((u, x))) for u in sa | sb for x in sc}
        if not ab_pairs <= before_set:
            raise AssertionError("site is not complete bipartite beforehand")
        if (before_set - after_set) - ab_pairs:
            raise AssertionError("rewrite removed edges outside the site")
        if (after_set - before_set) != gadget:
            raise AssertionError("rewrite added edges beyond the C gadget")


def _intro_map(old_info: EvalInfo, new_info: EvalInfo) -> dict:
    """old vertex id -> new vertex id, via shared introduction leaf objects."""
    new_pos = {id(nd): i for i, nd in enumerate(new_info.intro_nodes)}
    return {i: new_pos[id(nd)] for i, nd in enumerate(old_info.intro_nodes)}


def _site_from_after(stage: str, a_mapped, c_ids, after: Graph) -> ReductionSite:
    """Reconstruct the full surgery site from the rewritten graph.

    The three fresh vertices share one adjacency set: their class is joined
    as a unit and never splits. Everything they reach beyond A is the true
    B side, which can exceed the trigger neighborhood when renames above the
    splice point routed extra vertices into the same joins.
    """
    a_set = set(a_mapped)
    nb = set(after.adjacency[c_ids[0]])
    for c in c_ids[1:]:
        if set(after.adjacency[c]) != nb:  # pragma: no cover
            raise AssertionError("replacement vertices diverged")
    b = sorted(nb - a_set)
    return ReductionSite(tuple(sorted(a_set)), tuple(b), tuple(c_ids), stage)


def _aligned_before(old_info: EvalInfo, new_info: EvalInfo, mapping: dict) -> Graph:
    edges = tuple(sorted(
        tuple(sorted((mapping[u], mapping[v]))) for u, v in old_info.result.graph.edges
    ))
    return Graph(new_info.result.graph.n, edges)


def _three_intros(base: CwNode, label: int) -> tuple[CwNode, list[CwNode]]:
    intros = [CwIntro(label), CwIntro(label), CwIntro(label)]
    node = base
    for it in intros:
        node = CwUnion(node, it)
    return node, intros


def has_big_join(e: CwExpr | CwNode) -> bool:
    info = eval_cwe_full(e)
    root = e.root if isinstance(e, CwExpr) else e
    for node in postorder_nodes(root):
        if isinstance(node, CwJoin):
            f = info.facts[id(node.child)]
            ca = f.classes.get(node.a, frozenset())
            cb = f.classes.get(node.b, frozenset())
            if min(len(ca), len(cb)) > JOIN_SMALL_SIDE:
                return True
    return False


def eliminate_big_joins(e: CwExpr) -> tuple[CwExpr, tuple[RewriteEvent, ...]]:
    """Rewrite until every join has a side of at most six vertices.

    An offending join either adds nothing (some other part of the expression
    already built those pairs) and is simply dropped, or is replaced by three
    fresh work-labeled vertices joined to both sides and immediately renamed
    to the garbage label. Output labels fit in budget + 2.
    """
    e.validate()
    work, garbage = e.budget + 1, e.budget + 2
    root = e.root
    events: list[RewriteEvent] = []
    while True:
        info = eval_cwe_full(root)
        target = None
        for node in postorder_nodes(root):
            if isinstance(node, CwJoin):
                f = info.facts[id(node.child)]
                ca = f.classes.get(node.a, frozenset())
                cb = f.classes.get(node.b, frozenset())
                if min(len(ca), len(cb)) > JOIN_SMALL_SIDE:
                    target = (node, ca, cb, f)
                    break
        if target is None:
            break
        node, ca, cb, f = target
        added = {
            (u, v) if u < v else (v, u) for u in ca for v in cb
        } - set(f.edges)
        if not added:
            new_root = _replace(root, node, node.child)
            new_info = eval_cwe_full(new_root)
            mapping = _intro_map(info, new_info)
            events.append(RewriteEvent(
                "join-removed", None,
                _aligned_before(info, new_info, mapping),
                new_info.result.graph,
                mapping,
            ))
            root = new_root
            continue
        assert not f.classes.get(work), \
            "work label must be free at the splice point"
        base, intros = _three_intros(node.child, work)
        spliced = CwRename(work, garbage,
                           CwJoin(node.b, work,
                                  CwJoin(node.a, work, base)))
        new_root = _replace(root, node, spliced)
        new_info = eval_cwe_full(new_root)
        mapping = _intro_map(info, new_info)
        new_pos = {id(nd): i for i, nd in enumerate(new_info.intro_nodes)}
        site = _site_from_after(
            "bigjoin",
            [mapping[v] for v in ca],
            sorted(new_pos[id(it)] for it in intros),
            new_info.result.graph,
        )
        events.append(RewriteEvent(
            "bigjoin", site,
            _aligned_before(info, new_info, mapping),
            new_info.result.graph,
            mapping,
        ))
        root = new_root
    out = CwExpr(root, e.budget + 2)
    out.validate()
    return out, tuple(events)


def gradual_sites(e: CwExpr | CwNode) -> list[tuple[CwNode, int, frozenset, frozenset]]:
    """All (node, label, class, external common neighborhood) rewrite sites."""
    info = eval_cwe_full(e)
    g = info.result.graph
    root = e.root if isinstance(e, CwExpr) else e
    out = []
    for node in postorder_nodes(root):
        f = info.facts[id(node)]
        for lab in sorted(f.classes):
            cls = f.classes[lab]
            if len(cls) < SPLICE_MIN:
                continue
            common: frozenset | None = None
            for v in cls:
                nb = g.adjacency[v]
                common = nb if common is None else common & nb
                if len(common) < SPLICE_MIN:
                    break
            if common is None:
                continue
            outside = common - f.vertices
            if len(outside) >= SPLICE_MIN:
                out.append((node, lab, cls, outside))
    return out


def eliminate_gradual_bicliques(e: CwExpr, final_g: Graph | None = None
                                ) -> tuple[CwExpr, tuple[RewriteEvent, ...]]:
    """Retire label classes that sit on one side of a large biclique.

    Requires an expression whose joins all have a small side. Wherever a
    sub-expression holds seven or more same-labeled vertices all adjacent
    (in the final graph) to seven or more outside vertices, three fresh
    vertices take over the label and the old class moves to the garbage
    label, so later joins connect to the replacements instead. Output labels
    fit in budget + 2.
    """
    e.validate()
    if final_g is not None:
        if set(eval_cwe(e).graph.edges) != set(final_g.edges):
            raise PreconditionError("final_g does not match the expression")
    work, garbage = e.budget + 1, e.budget + 2
    root = e.root
    events: list[RewriteEvent] = []
    while True:
        sites = gradual_sites(CwExpr(root, garbage))
        if not sites:
            break
        node, lab, cls, outside = sites[0]
        info = eval_cwe_full(root)
        base, intros = _three_intros(node, work)
        spliced = CwRename(work, lab,
                           CwRename(lab, garbage,
                                    CwJoin(lab, work, base)))
        new_root = _replace(root, node, spliced)
        new_info = eval_cwe_full(new_root)
        mapping = _intro_map(info, new_info)
        new_pos = {id(nd): i for i, nd in enumerate(new_info.intro_nodes)}
        site = _site_from_after(
            "gradual",
            [mapping[v] for v in cls],
            sorted(new_pos[id(it)] for it in intros),
            new_info.result.graph,
        )
        events.append(RewriteEvent(
            "gradual", site,
            _aligned_before(info, new_info, mapping),
            new_info.result.graph,
            mapping,
        ))
        root = new_root
    out = CwExpr(root, e.budget + 2)
    out.validate()
    return out, tuple(events)


# -- the end-to-end pipeline -------------------------------------------------------

@dataclass(frozen=True)
class PipelineReport:
    original_expr: CwExpr
    after_big_joins: CwExpr
    after_bicliques: CwExpr
    final_graph: Graph
    edge_counts: tuple[int, int, int]
    decomposition_width: int
    answer: bool
    events: tuple[RewriteEvent, ...] = field(default_factory=tuple)

    @property
    def stages(self) -> tuple[tuple[str, int, int], ...]:
        g0 = eval_cwe(self.original_expr).graph
        g1 = eval_cwe(self.after_big_joins).graph
        g2 = self.final_graph
        return (("original", g0.n, g0.m),
                ("after-big-joins", g1.n, g1.m),
                ("after-bicliques", g2.n, g2.m))


def pipeline_decomposition(g: Graph) -> TreeDecomposition:
    """Exact decomposition for small graphs, min-fill heuristic otherwise."""
    if g.n <= 15:
        return decomposition_from_elimination(
            g, exact_treewidth_small(g).elimination_order
        )
    return min_fill_decomposition(g)


def decide_ehc_cw(e: CwExpr) -> tuple[bool, PipelineReport]:
    """Full pipeline: big-join removal, gradual retirement, subgraph DP."""
    e.validate()
    g0 = eval_cwe(e).graph
    e1, ev1 = eliminate_big_joins(e)
    g1 = eval_cwe(e1).graph
    e2, ev2 = eliminate_gradual_bicliques(e1, g1)
    g2 = eval_cwe(e2).graph
    if has_big_join(e1) or has_big_join(e2):  # pragma: no cover
        raise AssertionError("a large join survived the rewrite pass")
    if gradual_sites(e2):  # pragma: no cover
        raise AssertionError("a gradual rewrite site survived the fixpoint")
    td = pipeline_decomposition(g2)
    answer = decide_ehc_tw(g2, td)
    report = PipelineReport(
        original_expr=e,
        after_big_joins=e1,
        after_bicliques=e2,
        final_graph=g2,
        edge_counts=(g0.m, g1.m, g2.m),
        decomposition_width=td.width,
        answer=answer,
        events=ev1 + ev2,
    )
    return answer, report


def pull_back_solution(report: PipelineReport, sol: DesSolution) -> DesSolution:
    """Carry a solution of the final pipeline graph back to the original.

    Walks the rewrite events in reverse, transferring across each splice and
    undoing its vertex relabeling, and validates the result against the
    original expression's graph. This turns any yes answer of the rewritten
    instance into an independently checkable certificate of the input.
    """
    g0 = eval_cwe(report.original_expr).graph
    chain = [g0]
    for ev in report.events:
        chain.append(ev.after)
    current = sol
    for i in range(len(report.events) - 1, -1, -1):
        ev = report.events[i]
        prev = chain[i]
        if des_violation(ev.after, current) is not None:
            raise InvalidSolutionError(f"solution invalid at stage {i + 1}")
        if ev.site is not None:
            current = transfer_des_across_reduction(
                "backward", ev.site, ev.before, ev.after, current
            )
        inverse = {new: old for old, new in ev.mapping.items()}
        pidx = _pair_index(prev)
        v0 = frozenset(inverse[v] for v in current.v0)
        e0 = set()
        for e in current.e0:
            u, v = ev.before.edges[e]
            e0.add(pidx[tuple(sorted((inverse[u], inverse[v])))])
        current = DesSolution(v0, frozenset(e0))
    if des_violation(g0, current) is not None:  # pragma: no cover
        raise AssertionError("pulled-back solution failed validation")
    return current


def _connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in g.adjacency[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def random_cwe(k: int, size: int, seed: int) -> CwExpr:
    """Deterministic random expression with a connected evaluated graph.

    Join-heavy operator mix; regenerates from derived seeds until the result
    is connected, and fails loudly after a bounded number of attempts.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if size < 1:
        raise ValueError("size must be >= 1")
    for attempt in range(64):
        rng = SplitMix64(mix(seed, attempt))
        expr: CwNode = CwIntro(1 + rng.randrange(k))
        intros = 1
        while intros < size:
            roll = rng.randrange(100)
            if roll < 45:
                expr = CwUnion(expr, CwIntro(1 + rng.randrange(k)))
                intros += 1
            elif roll < 85:
                x, y = 1 + rng.randrange(k), 1 + rng.randrange(k)
                if x != y:
                    expr = CwJoin(x, y, expr)
            else:
                x, y = 1 + rng.randrange(k), 1 + rng.randrange(k)
                if x != y:
                    expr = CwRename(x, y, expr)
        for _ in range(2 + rng.randrange(3)):
            x, y = 1 + rng.randrange(k), 1 + rng.randrange(k)
            if x != y:
                expr = CwJoin(x, y, expr)
        candidate = CwExpr(expr, k)
        if _connected(eval_cwe(candidate).graph):
            return candidate
    raise GenerationFailedError(
        f"no connected expression after 64 attempts (k={k}, size={size})"
    )
