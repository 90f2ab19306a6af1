"""MILP instance representation, built-in branch-and-bound, LP-file bridge."""

from .model import (
    EPS_FEAS,
    EPS_INT,
    Constraint,
    MilpModel,
    ModelError,
    Relation,
    Solution,
    SolveStats,
    SolveStatus,
    Variable,
    VarKind,
    Violation,
    check_assignment,
)
from .solver import SolveLimits, Unbounded, solve
from .lpformat import (
    InfeasibleImport,
    ParsedLp,
    UnknownVariable,
    export_lp,
    import_solution,
    parse_lp,
)

__all__ = [
    "EPS_FEAS", "EPS_INT", "Constraint", "MilpModel", "ModelError",
    "Relation", "Solution", "SolveStats", "SolveStatus", "Variable",
    "VarKind", "Violation", "check_assignment", "SolveLimits", "Unbounded",
    "solve", "InfeasibleImport", "ParsedLp", "UnknownVariable", "export_lp",
    "import_solution", "parse_lp",
]
