"""CPLEX-LP text export, a minimal reader, and solution import.

The file-based bridge lets an external solver reproduce large runs: export
the model, solve elsewhere, and feed the assignment back as ``name value``
lines (``#`` comments ignored). Imported assignments are re-verified
locally before being trusted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .model import (
    MilpModel,
    ModelError,
    Relation,
    Solution,
    SolveStats,
    SolveStatus,
    VarKind,
    check_assignment,
)


class UnknownVariable(ModelError):
    pass


class InfeasibleImport(ModelError):
    def __init__(self, constraint: str, amount: float):
        self.constraint = constraint
        self.amount = amount
        super().__init__(
            f"imported assignment violates {constraint} by {amount:g}")


def _coef(value: float) -> str:
    return f"{value:.12g}"


def _terms(coeffs, variables) -> str:
    parts: list[str] = []
    for i, c in coeffs:
        name = variables[i].name
        if not parts:
            parts.append(f"{_coef(c)} {name}" if c != 1 else name)
        elif c < 0:
            parts.append(f"- {_coef(-c)} {name}" if c != -1 else f"- {name}")
        else:
            parts.append(f"+ {_coef(c)} {name}" if c != 1 else f"+ {name}")
    return " ".join(parts) if parts else "0 " + variables[0].name


def export_lp(model: MilpModel) -> str:
    model.validate()
    lines = [f"\\ {model.name}", "Minimize"]
    obj = sorted(model.objective.items())
    lines.append(" obj: " + _terms(obj, model.variables))
    lines.append("Subject To")
    for con in model.constraints:
        lines.append(f" {con.name}: {_terms(con.coeffs, model.variables)} "
                     f"{con.relation.value} {_coef(con.rhs)}")
    lines.append("Bounds")
    for v in model.variables:
        if v.kind is VarKind.BINARY:
            continue
        lines.append(f" {_coef(v.lb)} <= {v.name} <= {_coef(v.ub)}")
    generals = [v.name for v in model.variables if v.kind is VarKind.INTEGER]
    if generals:
        lines.append("Generals")
        lines.append(" " + " ".join(generals))
    binaries = [v.name for v in model.variables if v.kind is VarKind.BINARY]
    if binaries:
        lines.append("Binaries")
        lines.append(" " + " ".join(binaries))
    lines.append("End")
    return "\n".join(lines) + "\n"


@dataclass
class ParsedLp:
    """Structural view of an LP document, for audits and round-trip checks."""

    objective: dict[str, float] = field(default_factory=dict)
    constraints: list[tuple[str, dict[str, float], str, float]] = field(default_factory=list)
    bounds: dict[str, tuple[float, float]] = field(default_factory=dict)
    generals: set[str] = field(default_factory=set)
    binaries: set[str] = field(default_factory=set)

    def variable_names(self) -> set[str]:
        names = set(self.objective) | self.generals | self.binaries | set(self.bounds)
        for _, coeffs, _, _ in self.constraints:
            names |= set(coeffs)
        return names


_TERM_RE = re.compile(r"([+-])?\s*(\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)?\s*([A-Za-z_][\w\[\],.]*)")


def _parse_expr(text: str) -> dict[str, float]:
    coeffs: dict[str, float] = {}
    for sign, num, name in _TERM_RE.findall(text):
        value = float(num) if num else 1.0
        if sign == "-":
            value = -value
        coeffs[name] = coeffs.get(name, 0.0) + value
    return coeffs


def parse_lp(text: str) -> ParsedLp:
    """Minimal CPLEX-LP reader covering the dialect :func:`export_lp` emits."""
    out = ParsedLp()
    section = None
    pending: list[str] = []

    def flush() -> None:
        if not pending:
            return
        stmt = " ".join(pending)
        pending.clear()
        label, _, body = stmt.partition(":")
        body = body if _ else label
        name = label.strip() if _ else ""
        m = re.search(r"(<=|>=|=)", body)
        if not m:
            raise ModelError(f"constraint without relation: {stmt}")
        lhs, rel, rhs = body[:m.start()], m.group(1), body[m.end():]
        out.constraints.append((name, _parse_expr(lhs), rel, float(rhs)))

    for raw in text.splitlines():
        line = raw.split("\\")[0].strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered in ("minimize", "maximize", "subject to", "st", "s.t.",
                       "bounds", "generals", "binaries", "end"):
            if section == "subject to":
                flush()
            section = lowered
            continue
        if section == "minimize":
            body = line.partition(":")[2] if ":" in line else line
            for name, value in _parse_expr(body).items():
                out.objective[name] = out.objective.get(name, 0.0) + value
        elif section == "subject to":
            if ":" in line:
                flush()
            pending.append(line)
        elif section == "bounds":
            m = re.match(r"(\S+)\s*<=\s*(\S+)\s*<=\s*(\S+)", line)
            if not m:
                raise ModelError(f"unsupported bound line: {line}")
            out.bounds[m.group(2)] = (float(m.group(1)), float(m.group(3)))
        elif section == "generals":
            out.generals.update(line.split())
        elif section == "binaries":
            out.binaries.update(line.split())
    if section == "subject to":
        flush()
    return out


def import_solution(model: MilpModel, text: str) -> Solution:
    """Parse ``name value`` lines into a locally verified Solution.

    Variables absent from the file default to zero (solvers usually omit
    zeros). Raises :class:`UnknownVariable` for names outside the layout
    and :class:`InfeasibleImport` when the assignment violates the model.
    """
    index = model.var_index
    assignment = [0.0] * len(model.variables)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#")[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ModelError(f"line {lineno}: expected 'name value'")
        name, value = parts
        if name not in index:
            raise UnknownVariable(f"line {lineno}: unknown variable {name}")
        assignment[index[name]] = float(value)
    violations = check_assignment(model, assignment)
    if violations:
        worst = max(violations, key=lambda v: v.amount)
        raise InfeasibleImport(worst.constraint, worst.amount)
    return Solution(SolveStatus.OPTIMAL, tuple(assignment),
                    model.objective_value(assignment), SolveStats())
