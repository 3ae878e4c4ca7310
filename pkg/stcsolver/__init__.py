from .graph_core import Graph
from .matching import Matching, maximal_matching, maximum_matching
from .labeling import (
    DeletionSet,
    Labeling,
    cluster_labeling,
    is_cluster_graph,
    is_stc_labeling,
)
from .results import SolveResult, maximize_target, minimize_budget
from .gallai import approximate_stc, gallai_graph, min_vertex_cover, solve_stc_k
from .kernels import critical_cliques, kernelize_k, rule1_apply_once, rule2_apply
from .cluster_deletion import solve_cd_k
from .ell_solvers import solve_cd_ell, solve_stc_ell
from .special_cases import dispatch, find_induced, solve_polynomial
from .oracle import OracleBudget, brute_cd_optimum, brute_stc_optimum, correspondence_check
from .generators import ReductionArtifact, corpus, fig3_graphs
from .instance_io import ResultRecord, emit_instance, parse_instance
from .corpus_sweep import CorpusSweep, SweepConfig

__all__ = [
    "Graph",
    "Matching",
    "maximal_matching",
    "maximum_matching",
    "Labeling",
    "DeletionSet",
    "is_stc_labeling",
    "is_cluster_graph",
    "cluster_labeling",
    "SolveResult",
    "minimize_budget",
    "maximize_target",
    "gallai_graph",
    "min_vertex_cover",
    "solve_stc_k",
    "approximate_stc",
    "critical_cliques",
    "rule1_apply_once",
    "kernelize_k",
    "rule2_apply",
    "solve_cd_k",
    "solve_cd_ell",
    "solve_stc_ell",
    "find_induced",
    "dispatch",
    "solve_polynomial",
    "OracleBudget",
    "brute_stc_optimum",
    "brute_cd_optimum",
    "correspondence_check",
    "ReductionArtifact",
    "fig3_graphs",
    "corpus",
    "ResultRecord",
    "parse_instance",
    "emit_instance",
    "CorpusSweep",
    "SweepConfig",
]
