"""Branch-and-bound MILP solver over HiGHS LP relaxations.

Deterministic by construction: most-fractional branching with lowest-index
tie-breaks, depth-first exploration (floor branch first) with a best-bound
re-sort of the open list every 1000 nodes, and a single-threaded LP kernel.
Good enough for incremental basis models at any desk scale and for holistic
models up to moderate complexity; it is a correctness-first kernel, not a
commercial solver.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from .model import (
    EPS_FEAS,
    EPS_INT,
    MilpModel,
    ModelError,
    Relation,
    Solution,
    SolveStats,
    SolveStatus,
    VarKind,
    check_assignment,
)

RESORT_INTERVAL = 1000


class Unbounded(ModelError):
    """The LP relaxation is unbounded; basis models never produce this."""


@dataclass(frozen=True)
class SolveLimits:
    time_limit: float = 3600.0
    node_limit: int = 10_000_000


@dataclass
class _Node:
    lb: np.ndarray
    ub: np.ndarray
    bound: float
    depth: int
    seq: int


class _LpRelaxation:
    """Constraint matrices are assembled once; nodes only swap bounds."""

    def __init__(self, model: MilpModel):
        n = len(model.variables)
        self.n = n
        self.c = np.zeros(n)
        for i, coef in model.objective.items():
            self.c[i] = coef
        rows_ub, cols_ub, vals_ub, b_ub = [], [], [], []
        rows_eq, cols_eq, vals_eq, b_eq = [], [], [], []
        for con in model.constraints:
            if con.relation is Relation.EQ:
                r = len(b_eq)
                for i, coef in con.coeffs:
                    rows_eq.append(r)
                    cols_eq.append(i)
                    vals_eq.append(coef)
                b_eq.append(con.rhs)
            else:
                sign = 1.0 if con.relation is Relation.LE else -1.0
                r = len(b_ub)
                for i, coef in con.coeffs:
                    rows_ub.append(r)
                    cols_ub.append(i)
                    vals_ub.append(sign * coef)
                b_ub.append(sign * con.rhs)
        self.A_ub = (sparse.csr_matrix((vals_ub, (rows_ub, cols_ub)),
                                       shape=(len(b_ub), n)) if b_ub else None)
        self.b_ub = np.array(b_ub) if b_ub else None
        self.A_eq = (sparse.csr_matrix((vals_eq, (rows_eq, cols_eq)),
                                       shape=(len(b_eq), n)) if b_eq else None)
        self.b_eq = np.array(b_eq) if b_eq else None

    def solve(self, lb: np.ndarray, ub: np.ndarray):
        return linprog(self.c, A_ub=self.A_ub, b_ub=self.b_ub,
                       A_eq=self.A_eq, b_eq=self.b_eq,
                       bounds=np.column_stack([lb, ub]),
                       method="highs")


# Above this many integer variables the own-branching search falls an
# order of magnitude behind; "auto" switches to the HiGHS MIP backend
# there. The threshold keeps textbook-size models on the built-in search.
AUTO_BACKEND_CUTOFF = 40


def solve(model: MilpModel, limits: SolveLimits | None = None,
          backend: str = "auto") -> Solution:
    """Solve to a proven optimum or budget exhaustion.

    Status semantics: ``Optimal`` only with a completed search,
    ``Infeasible`` only with a completed proof, ``Feasible`` for the best
    incumbent at budget exhaustion, ``TimedOut`` when the budget ran out
    incumbent-less. Every returned assignment is re-verified against the
    raw model before being handed back.

    Backends: ``"bb"`` is the built-in branch and bound over LP
    relaxations; ``"highs"`` delegates the whole search to HiGHS;
    ``"auto"`` picks built-in below :data:`AUTO_BACKEND_CUTOFF` integer
    variables and HiGHS above. All are single-threaded and deterministic
    for identical inputs.
    """
    limits = limits or SolveLimits()
    model.validate()
    if backend not in ("auto", "bb", "highs"):
        raise ModelError(f"unknown backend {backend!r}")
    if backend == "auto":
        n_int = sum(v.kind is not VarKind.CONTINUOUS for v in model.variables)
        backend = "highs" if n_int > AUTO_BACKEND_CUTOFF else "bb"
    if backend == "highs":
        return _solve_highs(model, limits)
    start = time.perf_counter()
    lp = _LpRelaxation(model)
    int_mask = np.array([v.kind in (VarKind.INTEGER, VarKind.BINARY)
                         for v in model.variables])
    int_idx = np.flatnonzero(int_mask)

    # When the objective lives on integer variables with integral
    # coefficients, every LP bound can be rounded up, which sharpens pruning.
    integral_obj = all(
        float(coef).is_integer() and int_mask[i]
        for i, coef in model.objective.items())

    root_lb = np.array([v.lb for v in model.variables])
    root_ub = np.array([v.ub for v in model.variables])

    incumbent: np.ndarray | None = None
    incumbent_obj = math.inf
    nodes_done = 0
    lp_iters = 0
    exhausted = False
    seq = 0
    stack = [_Node(root_lb, root_ub, -math.inf, 0, seq)]

    while stack:
        if nodes_done >= limits.node_limit or \
                time.perf_counter() - start > limits.time_limit:
            exhausted = True
            break
        if nodes_done and nodes_done % RESORT_INTERVAL == 0:
            # Best bound on top of the stack: escape deep dead subtrees.
            stack.sort(key=lambda nd: (-nd.bound, nd.seq))
        node = stack.pop()
        if node.bound >= incumbent_obj - 1e-9:
            continue
        res = lp.solve(node.lb, node.ub)
        nodes_done += 1
        lp_iters += int(getattr(res, "nit", 0) or 0)
        if res.status == 3:
            raise Unbounded(f"LP relaxation of {model.name} is unbounded")
        if res.status != 0:
            continue  # infeasible (or numerically hopeless) subproblem
        bound = float(res.fun)
        if integral_obj:
            bound = math.ceil(bound - 1e-6)
        if bound >= incumbent_obj - 1e-9:
            continue
        x = np.asarray(res.x)
        frac = np.abs(x[int_idx] - np.round(x[int_idx]))
        if frac.size == 0 or frac.max() <= EPS_INT:
            x = x.copy()
            x[int_idx] = np.round(x[int_idx])
            obj = float(lp.c @ x)
            if obj < incumbent_obj - 1e-9:
                incumbent = x
                incumbent_obj = obj
            continue
        # Most-fractional branching, ties broken by lowest variable index.
        dist = np.abs(frac - 0.5)
        dist[frac <= EPS_INT] = math.inf
        j = int(int_idx[int(np.argmin(dist))])
        floor_v = math.floor(x[j] + EPS_INT)
        up_lb = node.lb.copy()
        up_lb[j] = floor_v + 1
        dn_ub = node.ub.copy()
        dn_ub[j] = floor_v
        up = _Node(up_lb, node.ub, bound, node.depth + 1, seq + 1)
        down = _Node(node.lb, dn_ub, bound, node.depth + 1, seq + 2)
        seq += 2
        # Dive toward the LP value: the nearer branch is explored first
        # (pushed last); ties round up, which keeps coverage-style
        # constraints satisfiable longer.
        if x[j] - floor_v >= 0.5:
            stack.extend([down, up])
        else:
            stack.extend([up, down])

    wall = time.perf_counter() - start
    stats = SolveStats(nodes=nodes_done, lp_iterations=lp_iters, wall_time=wall)

    if incumbent is not None:
        violations = check_assignment(model, incumbent, EPS_FEAS, EPS_INT)
        if violations:
            raise ModelError(
                f"solver produced an infeasible assignment: {violations[:3]}")
        status = SolveStatus.FEASIBLE if exhausted else SolveStatus.OPTIMAL
        return Solution(status, tuple(float(v) for v in incumbent),
                        incumbent_obj, stats)
    if exhausted:
        return Solution(SolveStatus.TIMED_OUT, None, None, stats)
    return Solution(SolveStatus.INFEASIBLE, None, None, stats)


def _solve_highs(model: MilpModel, limits: SolveLimits) -> Solution:
    from scipy.optimize import Bounds, LinearConstraint, milp

    start = time.perf_counter()
    n = len(model.variables)
    c = np.zeros(n)
    for i, coef in model.objective.items():
        c[i] = coef
    rows, cols, vals, lo, hi = [], [], [], [], []
    for r, con in enumerate(model.constraints):
        for i, coef in con.coeffs:
            rows.append(r)
            cols.append(i)
            vals.append(coef)
        if con.relation is Relation.LE:
            lo.append(-np.inf)
            hi.append(con.rhs)
        elif con.relation is Relation.GE:
            lo.append(con.rhs)
            hi.append(np.inf)
        else:
            lo.append(con.rhs)
            hi.append(con.rhs)
    A = sparse.csr_matrix((vals, (rows, cols)),
                          shape=(len(model.constraints), n))
    integrality = np.array([0 if v.kind is VarKind.CONTINUOUS else 1
                            for v in model.variables])
    bounds = Bounds(np.array([v.lb for v in model.variables]),
                    np.array([v.ub for v in model.variables]))
    res = milp(c, constraints=LinearConstraint(A, np.array(lo), np.array(hi)),
               integrality=integrality, bounds=bounds,
               options={"time_limit": limits.time_limit,
                        "node_limit": limits.node_limit})
    wall = time.perf_counter() - start
    stats = SolveStats(nodes=int(getattr(res, "mip_node_count", 0) or 0),
                       lp_iterations=0, wall_time=wall)
    if res.status == 3:
        raise Unbounded(f"model {model.name} is unbounded")
    if res.x is not None:
        x = np.asarray(res.x).copy()
        int_idx = np.flatnonzero(integrality)
        x[int_idx] = np.round(x[int_idx])
        violations = check_assignment(model, x, EPS_FEAS, EPS_INT)
        if violations:
            raise ModelError(
                f"backend produced an infeasible assignment: {violations[:3]}")
        status = SolveStatus.OPTIMAL if res.status == 0 else SolveStatus.FEASIBLE
        return Solution(status, tuple(float(v) for v in x), float(c @ x), stats)
    if res.status == 2:
        return Solution(SolveStatus.INFEASIBLE, None, None, stats)
    return Solution(SolveStatus.TIMED_OUT, None, None, stats)
