"""Edge Hamiltonicity toolkit: exact oracles and parameterized solvers."""

from .core import (
    DesSolution,
    EdgeSeq,
    Graph,
    GroupDecomposition,
    Hypergraph,
    TypeAssignment,
    build_graph,
    build_hypergraph,
    classify_types,
    decompose_groups,
    line_graph,
    normalize_edge_path,
    validate_des,
    validate_edge_sequence,
)
from .generators import generate_family
from .hyper import (
    ColorMerge,
    HyperSolveConfig,
    color_and_merge,
    complement_coloring_reduction,
    decide_hyper_ehp,
    reconstruct_certificate,
)
from .kernel import KernelTrace, kernelize, lift_certificate, rule_applies, two_approx_vc
from .oracle import (
    SolveResult,
    check_hn_equivalence,
    exact_treewidth_small,
    find_biclique,
    solve_des_exact,
    solve_edge_ham_exact,
)
from .cliquewidth import (
    CwExpr,
    CwIntro,
    CwJoin,
    CwRename,
    CwUnion,
    PipelineReport,
    ReductionSite,
    decide_ehc_cw,
    eliminate_big_joins,
    eliminate_gradual_bicliques,
    eval_cwe,
    pull_back_solution,
    random_cwe,
    reduce_biclique_graph,
    repair_contain,
    transfer_des_across_reduction,
)
from .transforms import decide_via_transform, ehc_to_ehp_gadget, ehp_to_ehc_gadget
from .treewidth import (
    NiceDecomposition,
    TreeDecomposition,
    decide_ehc_tw,
    des_dp,
    make_nice,
    min_fill_decomposition,
    validate_td,
)

__all__ = [name for name in dir() if not name.startswith("_")]
