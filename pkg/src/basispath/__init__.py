"""Basis path generation for control-flow graphs via mixed-integer programming."""

from .cfg import (
    BasisCandidateSet,
    Cfg,
    CfgError,
    DeadEndNode,
    NoSourceOrSink,
    ParallelEdge,
    PathWalk,
    SelfLoop,
    UnreachableNode,
    coverage_fraction,
    dump_cfg,
    independence_rank,
    load_cfg,
    validate_cfg,
)
from .extract import DisconnectedFlow, extract_walk, verify_connected_support
from .models import (
    AlreadyComplete,
    IncrementalState,
    VariableLayout,
    audit_groups,
    big_m_values,
    build_holistic,
    build_incremental,
)
from .strategies import (
    GenerationReport,
    run_bfs_baseline,
    run_holistic,
    run_incremental,
    run_strategy,
)
from .synth import InfeasibleParameters, generate, generate_corpus, load_manifest

__version__ = "0.1.0"

__all__ = [
    "BasisCandidateSet", "Cfg", "CfgError", "DeadEndNode", "NoSourceOrSink",
    "ParallelEdge", "PathWalk", "SelfLoop", "UnreachableNode",
    "coverage_fraction", "dump_cfg", "independence_rank", "load_cfg",
    "validate_cfg", "DisconnectedFlow", "extract_walk",
    "verify_connected_support", "AlreadyComplete", "IncrementalState",
    "VariableLayout", "audit_groups", "big_m_values", "build_holistic",
    "build_incremental", "GenerationReport", "run_bfs_baseline",
    "run_holistic", "run_incremental", "run_strategy",
    "InfeasibleParameters", "generate", "generate_corpus", "load_manifest",
]
