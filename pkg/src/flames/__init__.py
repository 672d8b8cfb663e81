"""Flames in rooted digraphs: maximal flames, minimum-weight flames of DAGs, branching decompositions."""

from .connectivity import FlowState, TightSets, edge_deletable, lambda_all, local_connectivity, max_disjoint_paths, tight_sets
from .decomposition import (
    Branching,
    BranchingViolation,
    ContractedGraph,
    FlameDecomposition,
    check_decomposition,
    contracted_graph,
    decompose_digraph,
    decompose_flame,
    good_branching,
    is_branching,
    validate_branching,
    verify_spanning_chain,
)
from .flame import (
    FlameReport,
    NotAFlameError,
    augment_flame,
    grow_maximal_flame,
    is_flame,
    peel_maximal_flame,
    without_root_in_edges,
)
from .gammoid import CyclicGraphError, gammoid_independent, gammoid_min_base, min_weight_maximal_flame_dag
from .graph import (
    GraphParseError,
    GraphView,
    RootedDigraph,
    format_weight,
    graph_from_json,
    graph_to_json,
    is_acyclic,
    parse_graph,
    parse_weight,
    serialize_graph,
    subgraph_view,
)

__all__ = [
    "Branching",
    "BranchingViolation",
    "ContractedGraph",
    "CyclicGraphError",
    "FlameDecomposition",
    "FlameReport",
    "FlowState",
    "GraphParseError",
    "GraphView",
    "NotAFlameError",
    "RootedDigraph",
    "TightSets",
    "augment_flame",
    "check_decomposition",
    "contracted_graph",
    "decompose_digraph",
    "decompose_flame",
    "edge_deletable",
    "format_weight",
    "gammoid_independent",
    "gammoid_min_base",
    "good_branching",
    "graph_from_json",
    "graph_to_json",
    "grow_maximal_flame",
    "is_acyclic",
    "is_branching",
    "is_flame",
    "lambda_all",
    "local_connectivity",
    "max_disjoint_paths",
    "min_weight_maximal_flame_dag",
    "parse_graph",
    "parse_weight",
    "peel_maximal_flame",
    "serialize_graph",
    "subgraph_view",
    "tight_sets",
    "validate_branching",
    "verify_spanning_chain",
    "without_root_in_edges",
]
