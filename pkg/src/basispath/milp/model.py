"""Language-neutral MILP instance representation and feasibility checking."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

EPS_FEAS = 1e-6
EPS_INT = 1e-6


class VarKind(enum.Enum):
    CONTINUOUS = "continuous"
    INTEGER = "integer"
    BINARY = "binary"


class Relation(enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class SolveStatus(enum.Enum):
    OPTIMAL = "Optimal"
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    TIMED_OUT = "TimedOut"


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    kind: VarKind
    lb: float
    ub: float


@dataclass(frozen=True)
class Constraint:
    name: str
    group: str
    coeffs: tuple[tuple[int, float], ...]  # (variable index, coefficient)
    relation: Relation
    rhs: float


@dataclass
class MilpModel:
    """A minimize-sense MILP with explicit finite bounds on every variable."""

    name: str = "model"
    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[int, float] = field(default_factory=dict)

    def add_variable(self, name: str, kind: VarKind, lb: float = 0.0,
                     ub: float | None = None) -> int:
        if kind is VarKind.BINARY:
            lb, ub = 0.0, 1.0
        if ub is None:
            raise ModelError(f"variable {name} needs an explicit upper bound")
        self.variables.append(Variable(name, kind, float(lb), float(ub)))
        return len(self.variables) - 1

    def add_constraint(self, name: str, coeffs: Sequence[tuple[int, float]],
                       relation: Relation, rhs: float, group: str | None = None) -> int:
        self.constraints.append(Constraint(
            name, group or name, tuple((int(i), float(c)) for i, c in coeffs),
            relation, float(rhs)))
        return len(self.constraints) - 1

    def set_objective(self, coeffs: Sequence[tuple[int, float]]) -> None:
        self.objective = {int(i): float(c) for i, c in coeffs}

    def objective_value(self, assignment: Sequence[float]) -> float:
        return sum(c * assignment[i] for i, c in self.objective.items())

    @property
    def var_index(self) -> dict[str, int]:
        return {v.name: i for i, v in enumerate(self.variables)}

    def validate(self) -> None:
        n = len(self.variables)
        for v in self.variables:
            if not (v.lb <= v.ub):
                raise ModelError(f"variable {v.name} has empty bound interval")
            if v.ub == float("inf") or v.lb == float("-inf"):
                raise ModelError(f"variable {v.name} has an infinite bound")
            if v.kind is VarKind.BINARY and (v.lb, v.ub) != (0.0, 1.0):
                raise ModelError(f"binary variable {v.name} must have bounds [0,1]")
        for con in self.constraints:
            for i, _ in con.coeffs:
                if not 0 <= i < n:
                    raise ModelError(f"constraint {con.name} references variable {i}")
        for i in self.objective:
            if not 0 <= i < n:
                raise ModelError(f"objective references variable {i}")


@dataclass(frozen=True)
class Violation:
    constraint: str
    amount: float


@dataclass(frozen=True)
class SolveStats:
    nodes: int = 0
    lp_iterations: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class Solution:
    status: SolveStatus
    assignment: tuple[float, ...] | None
    objective_value: float | None
    stats: SolveStats = SolveStats()


def check_assignment(model: MilpModel, assignment: Sequence[float],
                     eps_feas: float = EPS_FEAS,
                     eps_int: float = EPS_INT) -> list[Violation]:
    """Independent re-verification of an assignment against the raw model.

    Returns every bound, integrality, and constraint violation beyond
    tolerance; an empty list certifies feasibility.
    """
    out: list[Violation] = []
    if len(assignment) != len(model.variables):
        raise ModelError("assignment length does not match variable count")
    for i, var in enumerate(model.variables):
        x = assignment[i]
        if x < var.lb - eps_feas:
            out.append(Violation(f"lb({var.name})", var.lb - x))
        if x > var.ub + eps_feas:
            out.append(Violation(f"ub({var.name})", x - var.ub))
        if var.kind in (VarKind.INTEGER, VarKind.BINARY):
            frac = abs(x - round(x))
            if frac > eps_int:
                out.append(Violation(f"int({var.name})", frac))
    for con in model.constraints:
        lhs = sum(c * assignment[i] for i, c in con.coeffs)
        if con.relation is Relation.LE:
            excess = lhs - con.rhs
        elif con.relation is Relation.GE:
            excess = con.rhs - lhs
        else:
            excess = abs(lhs - con.rhs)
        if excess > eps_feas:
            out.append(Violation(con.name, excess))
    return out
