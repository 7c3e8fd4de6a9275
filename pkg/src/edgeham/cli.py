"""Command-line surface.

Exit codes: 0 yes/valid, 1 no/invalid, 2 probably-no, 64 usage error,
65 malformed input data, 70 resource/runtime failure. The first stdout line
is always a machine-readable `verdict <token>`; certificates follow as a
`certificate <indices...>` line when requested.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import io as fmt
from .cliquewidth import decide_ehc_cw, eval_cwe
from .core import (
    EdgeSeq,
    Graph,
    Hypergraph,
    as_hypergraph,
    trivial_edge_ham,
    validate_des,
    validate_edge_sequence,
)
from .errors import EdgeHamError, NotAPermutationError, ParseError
from .generators import generate_family
from .hyper import HyperSolveConfig, decide_hyper_ehp
from .kernel import kernelize, lift_certificate, two_approx_vc
from .oracle import DEFAULT_EDGE_CAP, SolveResult, solve_edge_ham_exact
from .report import write_pipeline_report
from .transforms import decide_via_transform, ehc_to_ehp_gadget, ehp_to_ehc_gadget
from .treewidth import decide_ehc_tw, min_fill_decomposition, validate_td

EXIT_YES = 0
EXIT_NO = 1
EXIT_PROBABLY_NO = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_RUNTIME = 70


def _oracle_cap() -> int:
    raw = os.environ.get("EDGEHAM_ORACLE_CAP")
    return int(raw) if raw else DEFAULT_EDGE_CAP


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_instance(path: str):
    text = _read(path)
    for _num, parts in fmt._data_lines(text):
        if parts[0] == "p" and len(parts) > 1 and parts[1] == "hyp":
            return fmt.parse_hypergraph(text)
        break
    return fmt.parse_graph(text)


def _parse_vertex_list(raw: str) -> tuple[int, ...]:
    return tuple(int(tok) - 1 for tok in raw.replace(",", " ").split())


def _answer_exit(answer: str) -> int:
    return {"yes": EXIT_YES, "no": EXIT_NO, "probably-no": EXIT_PROBABLY_NO}[answer]


def _emit_result(res: SolveResult, show_certificate: bool) -> int:
    print(f"verdict {res.answer}")
    if show_certificate and res.certificate is not None:
        if isinstance(res.certificate, EdgeSeq):
            print("certificate " +
                  " ".join(str(i + 1) for i in res.certificate.order))
        else:
            print("certificate-v " +
                  " ".join(str(v + 1) for v in sorted(res.certificate.v0)))
            print("certificate-e " +
                  " ".join(str(e + 1) for e in sorted(res.certificate.e0)))
    return _answer_exit(res.answer)


def _emit_bool(answer: bool) -> int:
    print(f"verdict {'yes' if answer else 'no'}")
    return EXIT_YES if answer else EXIT_NO


def _cmd_solve(args) -> int:
    instance = _load_instance(args.input)
    cap = _oracle_cap()
    method = args.method
    if method == "auto":
        if instance.m <= cap:
            method = "oracle"
        elif args.cwe and args.problem == "cycle":
            method = "cw"
        else:
            method = "tw"

    if method == "oracle":
        return _emit_result(
            solve_edge_ham_exact(instance, args.problem, cap=cap), args.certificate
        )

    if method == "hyper":
        if args.hitting_set is None:
            print("error: --method hyper requires --hitting-set", file=sys.stderr)
            return EXIT_USAGE
        if args.problem != "path":
            print("error: the hypergraph solver decides paths only", file=sys.stderr)
            return EXIT_USAGE
        cfg = HyperSolveConfig(delta=args.delta, max_rounds=args.max_rounds,
                               seed=args.seed)
        res = decide_hyper_ehp(as_hypergraph(instance),
                               _parse_vertex_list(args.hitting_set),
                               cfg, oracle_cap=cap)
        return _emit_result(res, args.certificate)

    if isinstance(instance, Hypergraph):
        print(f"error: --method {method} needs a plain graph", file=sys.stderr)
        return EXIT_USAGE

    if method == "vc":
        def vc_path(g: Graph) -> bool:
            trivial = trivial_edge_ham(g, "path")
            if trivial is not None:
                return trivial[0]
            trace = kernelize(g, two_approx_vc(g))
            return solve_edge_ham_exact(trace.kernel, "path", cap=cap).is_yes

        if args.problem == "path":
            return _emit_bool(vc_path(instance))
        return _emit_bool(decide_via_transform(instance, "cycle", vc_path))

    if method == "tw":
        td = None
        if args.td:
            td = fmt.parse_td(_read(args.td))
            if not validate_td(instance, td):
                print("error: the supplied decomposition is invalid",
                      file=sys.stderr)
                return EXIT_DATA

        def tw_cycle(g: Graph) -> bool:
            use = td if g is instance and td is not None else None
            return decide_ehc_tw(g, use if use is not None
                                 else min_fill_decomposition(g))

        if args.problem == "cycle":
            return _emit_bool(tw_cycle(instance))
        return _emit_bool(decide_via_transform(instance, "path", tw_cycle))

    if method == "cw":
        if not args.cwe:
            print("error: --method cw requires --cwe", file=sys.stderr)
            return EXIT_USAGE
        if args.problem != "cycle":
            print("error: the expression pipeline decides cycles; "
                  "use --method tw for paths", file=sys.stderr)
            return EXIT_USAGE
        expr = fmt.parse_cwe(_read(args.cwe))
        built = eval_cwe(expr).graph
        if built.n != instance.n or set(built.edges) != set(instance.edges):
            print("error: the expression does not evaluate to the input graph",
                  file=sys.stderr)
            return EXIT_DATA
        answer, _report = decide_ehc_cw(expr)
        return _emit_bool(answer)

    raise AssertionError(method)


def _cmd_kernelize(args) -> int:
    g = fmt.parse_graph(_read(args.input))
    cover = (_parse_vertex_list(args.cover) if args.cover
             else two_approx_vc(g))
    trace = kernelize(g, cover)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(fmt.serialize_graph(trace.kernel))
    with open(args.trace, "w", encoding="utf-8") as fh:
        fh.write(fmt.serialize_trace(trace))
    print(f"verdict kernelized edges {g.m} -> {trace.kernel.m}")
    return EXIT_YES


def _cmd_lift(args) -> int:
    trace = fmt.parse_trace(_read(args.trace))
    seq = fmt.parse_edge_witness(_read(args.kernel_cert), "path")
    lifted = lift_certificate(trace, seq)
    print("verdict lifted")
    print("certificate " + " ".join(str(i + 1) for i in lifted.order))
    return EXIT_YES


def _cmd_reduce(args) -> int:
    g = fmt.parse_graph(_read(args.input))
    anchor = _parse_vertex_list(args.anchor)
    if args.to == "cycle":
        if len(anchor) != 2:
            print("error: --to cycle needs --anchor u,v", file=sys.stderr)
            return EXIT_USAGE
        out, _ = ehp_to_ehc_gadget(g, anchor[0], anchor[1])
    else:
        if len(anchor) != 1:
            print("error: --to path needs --anchor u", file=sys.stderr)
            return EXIT_USAGE
        out, _ = ehc_to_ehp_gadget(g, anchor[0])
    sys.stdout.write(fmt.serialize_graph(out))
    return EXIT_YES


def _cmd_gen(args) -> int:
    instance, info = generate_family(args.family, seed=args.seed)
    print(f"c family {info['family']}")
    print(f"c seed {info['seed']}")
    if "planted" in info:
        print("c planted " + " ".join(str(v + 1) for v in info["planted"]))
    if isinstance(instance, Hypergraph):
        sys.stdout.write(fmt.serialize_hypergraph(instance))
    else:
        sys.stdout.write(fmt.serialize_graph(instance))
    return EXIT_YES


def _cmd_check(args) -> int:
    instance = _load_instance(args.input)
    witness = _read(args.witness)
    if args.kind in ("path", "cycle"):
        try:
            ok = validate_edge_sequence(
                instance, fmt.parse_edge_witness(witness, args.kind)
            )
        except NotAPermutationError as exc:
            print(f"verdict invalid ({exc})")
            return EXIT_NO
    elif args.kind == "des":
        if isinstance(instance, Hypergraph):
            print("error: subgraph witnesses need a plain graph", file=sys.stderr)
            return EXIT_USAGE
        ok = validate_des(instance, fmt.parse_des_witness(witness))
    else:
        if isinstance(instance, Hypergraph):
            print("error: decompositions need a plain graph", file=sys.stderr)
            return EXIT_USAGE
        ok = validate_td(instance, fmt.parse_td(witness))
    print(f"verdict {'valid' if ok else 'invalid'}")
    return EXIT_YES if ok else EXIT_NO


def _cmd_report(args) -> int:
    expr = fmt.parse_cwe(_read(args.cwe))
    answer, report = decide_ehc_cw(expr)
    tsv, png = write_pipeline_report(report, args.output_dir)
    print(f"verdict {'yes' if answer else 'no'}")
    print(f"report {tsv}")
    print(f"figure {png}")
    return EXIT_YES if answer else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="edgeham",
        description="Edge Hamiltonicity solvers for graphs and hypergraphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide an instance")
    solve.add_argument("--problem", choices=("path", "cycle"), required=True)
    solve.add_argument("--method",
                       choices=("auto", "oracle", "vc", "tw", "cw", "hyper"),
                       default="auto")
    solve.add_argument("--input", required=True)
    solve.add_argument("--td")
    solve.add_argument("--cwe")
    solve.add_argument("--hitting-set")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--delta", type=float, default=0.01)
    solve.add_argument("--max-rounds", type=int, default=256)
    solve.add_argument("--certificate", action="store_true")
    solve.set_defaults(func=_cmd_solve)

    kern = sub.add_parser("kernelize", help="shrink a path instance")
    kern.add_argument("--input", required=True)
    kern.add_argument("--cover", help="comma-separated 1-based cover vertices")
    kern.add_argument("--output", required=True)
    kern.add_argument("--trace", required=True)
    kern.set_defaults(func=_cmd_kernelize)

    lift = sub.add_parser("lift", help="lift a kernel certificate")
    lift.add_argument("--trace", required=True)
    lift.add_argument("--kernel-cert", required=True)
    lift.set_defaults(func=_cmd_lift)

    red = sub.add_parser("reduce", help="emit a path/cycle exchange gadget")
    red.add_argument("--to", choices=("path", "cycle"), required=True)
    red.add_argument("--input", required=True)
    red.add_argument("--anchor", required=True,
                     help="u,v for --to cycle; u for --to path (1-based)")
    red.set_defaults(func=_cmd_reduce)

    gen = sub.add_parser("gen", help="generate an instance family member")
    gen.add_argument("--family", required=True,
                     help='e.g. "path 5", "gnm 10 15", "vc_bounded 10 2 12"')
    gen.add_argument("--seed", type=int, default=0)
    gen.set_defaults(func=_cmd_gen)

    chk = sub.add_parser("check", help="validate a witness against an instance")
    chk.add_argument("--kind", choices=("path", "cycle", "des", "td"),
                     required=True)
    chk.add_argument("--input", required=True)
    chk.add_argument("--witness", required=True)
    chk.set_defaults(func=_cmd_check)

    rep = sub.add_parser("report", help="run the expression pipeline and plot it")
    rep.add_argument("--cwe", required=True)
    rep.add_argument("--output-dir", required=True)
    rep.set_defaults(func=_cmd_report)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except EdgeHamError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
