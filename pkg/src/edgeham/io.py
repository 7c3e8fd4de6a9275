"""Text formats: graphs, hypergraphs, tree decompositions, expressions, traces.

Files use 1-based vertex and edge ids (the usual DIMACS/PACE convention);
everything in memory is 0-based, and the translation lives only here.
Parsers reject trailing garbage and count mismatches; `c` lines are comments.
"""

from __future__ import annotations

import json

from .cliquewidth import CwExpr, CwIntro, CwJoin, CwNode, CwRename, CwUnion
from .core import DesSolution, EdgeSeq, Graph, Hypergraph, Mode, build_graph, build_hypergraph
from .errors import CountMismatchError, ParseError, VertexOutOfRangeError
from .kernel import Deletion, KernelTrace
from .treewidth import TreeDecomposition


def _data_lines(text: str):
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield num, line.split()


def parse_graph(text: str) -> Graph:
    """`p edge <n> <m>` header, then m lines `e <u> <v>` with 1-based ids."""
    n = m = None
    pairs: list[tuple[int, int]] = []
    for num, parts in _data_lines(text):
        if parts[0] == "p":
            if n is not None:
                raise ParseError("second header", num)
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError("expected `p edge <n> <m>`", num)
            n, m = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before header", num)
            if len(parts) != 3:
                raise ParseError("expected `e <u> <v>`", num)
            u, v = int(parts[1]), int(parts[2])
            if u < 1 or v < 1 or u > n or v > n:
                raise VertexOutOfRangeError(f"line {num}: vertex outside 1..{n}")
            pairs.append((u - 1, v - 1))
        else:
            raise ParseError(f"unexpected `{' '.join(parts)}`", num)
    if n is None:
        raise ParseError("missing `p edge` header")
    if len(pairs) != m:
        raise CountMismatchError(f"header promised {m} edges, found {len(pairs)}")
    return build_graph(n, pairs)


def serialize_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    """`p hyp <n> <m>` header, then m lines `h <v1> <v2> ...`."""
    n = m = None
    edges: list[list[int]] = []
    for num, parts in _data_lines(text):
        if parts[0] == "p":
            if n is not None:
                raise ParseError("second header", num)
            if len(parts) != 4 or parts[1] != "hyp":
                raise ParseError("expected `p hyp <n> <m>`", num)
            n, m = int(parts[2]), int(parts[3])
        elif parts[0] == "h":
            if n is None:
                raise ParseError("hyperedge before header", num)
            if len(parts) < 2:
                raise ParseError("empty hyperedge", num)
            members = [int(x) for x in parts[1:]]
            if any(v < 1 or v > n for v in members):
                raise VertexOutOfRangeError(f"line {num}: vertex outside 1..{n}")
            edges.append([v - 1 for v in members])
        else:
            raise ParseError(f"unexpected `{' '.join(parts)}`", num)
    if n is None:
        raise ParseError("missing `p hyp` header")
    if len(edges) != m:
        raise CountMismatchError(f"header promised {m} hyperedges, found {len(edges)}")
    return build_hypergraph(n, edges)


def serialize_hypergraph(h: Hypergraph) -> str:
    lines = [f"p hyp {h.n} {h.m}"]
    for e in h.hyperedges:
        lines.append("h " + " ".join(str(v + 1) for v in sorted(e)))
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> TreeDecomposition:
    """`s td <bags> <width+1> <n>` header, `b <i> <v...>` bags, then tree edges."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for num, parts in _data_lines(text):
        if parts[0] == "s":
            if header is not None:
                raise ParseError("second header", num)
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError("expected `s td <bags> <width+1> <n>`", num)
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
        elif parts[0] == "b":
            if header is None:
                raise ParseError("bag before header", num)
            idx = int(parts[1])
            if idx < 1 or idx > header[0]:
                raise ParseError(f"bag id {idx} outside 1..{header[0]}", num)
            if idx in bags:
                raise ParseError(f"bag {idx} defined twice", num)
            members = [int(x) for x in parts[2:]]
            if any(v < 1 or v > header[2] for v in members):
                raise VertexOutOfRangeError(f"line {num}: vertex outside 1..{header[2]}")
            bags[idx] = frozenset(v - 1 for v in members)
        else:
            if header is None:
                raise ParseError("tree edge before header", num)
            if len(parts) != 2:
                raise ParseError("expected `<i> <j>` tree edge", num)
            i, j = int(parts[0]), int(parts[1])
            if min(i, j) < 1 or max(i, j) > header[0]:
                raise ParseError(f"tree edge outside 1..{header[0]}", num)
            edges.append((i - 1, j - 1))
    if header is None:
        raise ParseError("missing `s td` header")
    if len(bags) != header[0]:
        raise CountMismatchError(
            f"header promised {header[0]} bags, found {len(bags)}"
        )
    ordered = tuple(bags[i + 1] for i in range(header[0]))
    td = TreeDecomposition(ordered, tuple(edges))
    if header[0] and td.width + 1 != header[1]:
        raise CountMismatchError(
            f"header promised width {header[1] - 1}, bags give {td.width}"
        )
    return td


def serialize_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(("b " + str(i) + " " +
                      " ".join(str(v + 1) for v in sorted(bag))).rstrip())
    for i, j in td.tree_edges:
        lines.append(f"{i + 1} {j + 1}")
    return "\n".join(lines) + "\n"


# -- clique-width expressions -----------------------------------------------------

def _tokenize(src: str, base_line: int) -> list[tuple[str, int]]:
    out = []
    line = base_line
    i = 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line += 1
            i += 1
        elif ch.isspace():
            i += 1
        elif ch in "()":
            out.append((ch, line))
            i += 1
        else:
            j = i
            while j < len(src) and not src[j].isspace() and src[j] not in "()":
                j += 1
            out.append((src[i:j], line))
            i = j
    return out


def parse_cwe(text: str) -> CwExpr:
    """`k <budget>` header line, then one s-expression over intro/union/rename/join."""
    lines = text.splitlines()
    header_idx = None
    for i, raw in enumerate(lines):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        header_idx = i
        break
    if header_idx is None:
        raise ParseError("missing `k <budget>` header")
    parts = lines[header_idx].split()
    if len(parts) != 2 or parts[0] != "k":
        raise ParseError("expected `k <budget>`", header_idx + 1)
    try:
        budget = int(parts[1])
    except ValueError:
        raise ParseError("budget must be an integer", header_idx + 1)
    rest = "\n".join(lines[header_idx + 1:])
    tokens = _tokenize(rest, header_idx + 2)
    pos = 0
    import sys
    _old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(_old_limit, 4 * len(tokens) + 100))

    def expect(tok: str):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos][0] != tok:
            line = tokens[pos][1] if pos < len(tokens) else None
            raise ParseError(f"expected `{tok}`", line)
        pos += 1

    def number() -> int:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of expression")
        tok, line = tokens[pos]
        try:
            val = int(tok)
        except ValueError:
            raise ParseError(f"expected a label, got `{tok}`", line)
        pos += 1
        return val

    def node() -> CwNode:
        nonlocal pos
        expect("(")
        if pos >= len(tokens):
            raise ParseError("unexpected end of expression")
        op, line = tokens[pos]
        pos += 1
        if op == "intro":
            out: CwNode = CwIntro(number())
        elif op == "union":
            left = node()
            right = node()
            out = CwUnion(left, right)
        elif op == "rename":
            i, j = number(), number()
            out = CwRename(i, j, node())
        elif op == "join":
            i, j = number(), number()
            out = CwJoin(i, j, node())
        else:
            raise ParseError(f"unknown operator `{op}`", line)
        expect(")")
        return out

    try:
        root = node()
    finally:
        sys.setrecursionlimit(_old_limit)
    if pos != len(tokens):
        raise ParseError("trailing content after the expression", tokens[pos][1])
    expr = CwExpr(root, budget)
    expr.validate()
    return expr


def _cwe_node_text(node: CwNode) -> str:
    if isinstance(node, CwIntro):
        return f"(intro {node.label})"
    if isinstance(node, CwUnion):
        return f"(union {_cwe_node_text(node.left)} {_cwe_node_text(node.right)})"
    if isinstance(node, CwRename):
        return f"(rename {node.old} {node.new} {_cwe_node_text(node.child)})"
    if isinstance(node, CwJoin):
        return f"(join {node.a} {node.b} {_cwe_node_text(node.child)})"
    raise AssertionError(type(node))


def serialize_cwe(e: CwExpr) -> str:
    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10000))
    try:
        return f"k {e.budget}\n{_cwe_node_text(e.root)}\n"
    finally:
        sys.setrecursionlimit(old)


# -- kernel traces and witnesses ----------------------------------------------------

def serialize_trace(trace: KernelTrace) -> str:
    payload = {
        "n": trace.kernel.n,
        "vertex_cover": [v + 1 for v in trace.vertex_cover],
        "deletions": [
            {"index": d.index + 1, "u": d.pair[0] + 1, "v": d.pair[1] + 1,
             "type": d.type_index}
            for d in trace.deletions
        ],
        "kernel_edges": [[u + 1, v + 1] for u, v in trace.kernel.edges],
    }
    return json.dumps(payload, indent=1) + "\n"


def parse_trace(text: str) -> KernelTrace:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad trace JSON: {exc}")
    try:
        n = payload["n"]
        cover = tuple(v - 1 for v in payload["vertex_cover"])
        deletions = tuple(
            Deletion(d["index"] - 1, (d["u"] - 1, d["v"] - 1), d["type"])
            for d in payload["deletions"]
        )
        kernel = build_graph(n, [(u - 1, v - 1) for u, v in payload["kernel_edges"]])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"trace is missing a field: {exc}")
    return KernelTrace(cover, deletions, kernel)


def parse_edge_witness(text: str, mode: Mode) -> EdgeSeq:
    """Whitespace-separated 1-based edge indices."""
    try:
        order = tuple(int(tok) - 1 for tok in text.split())
    except ValueError:
        raise ParseError("witness must be whitespace-separated integers")
    return EdgeSeq(order, mode)


def serialize_edge_witness(seq: EdgeSeq) -> str:
    return " ".join(str(i + 1) for i in seq.order) + "\n"


def parse_des_witness(text: str) -> DesSolution:
    """A `v <ids...>` line and an optional `e <edge indices...>` line."""
    v0 = None
    e0: frozenset[int] = frozenset()
    for num, parts in _data_lines(text):
        if parts[0] == "v":
            if v0 is not None:
                raise ParseError("second `v` line", num)
            v0 = frozenset(int(x) - 1 for x in parts[1:])
        elif parts[0] == "e":
            e0 = frozenset(int(x) - 1 for x in parts[1:])
        else:
            raise ParseError(f"unexpected `{' '.join(parts)}`", num)
    if v0 is None:
        raise ParseError("missing `v` line")
    return DesSolution(v0, e0)


def serialize_des_witness(sol: DesSolution) -> str:
    lines = ["v " + " ".join(str(v + 1) for v in sorted(sol.v0))]
    lines.append(("e " + " ".join(str(e + 1) for e in sorted(sol.e0))).rstrip())
    return "\n".join(lines) + "\n"
