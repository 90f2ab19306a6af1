"""Translate a CFG into the MILP formulations for basis path generation.

Two builders live here. The holistic one assembles all k paths at once:
per-path flow conservation, optional auxiliary-flow connectivity (subtour
elimination), integer/binary linking, collective edge coverage, and the
triangular private-edge scheme that certifies independence by
construction. The incremental one models a single path against the
covered-edge state, with a novelty penalty on not-yet-covered edges and
the one-new-edge independence constraint.

Constraint group names are a public contract: tests toggle connectivity
and assert exactly the ``aux_flow``/``aux_cap`` groups appear or vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cfg import Cfg, PathWalk
from .milp import MilpModel, Relation, VarKind


class AlreadyComplete(Exception):
    """Every edge is covered before the basis is complete: the greedy trap."""


@dataclass(frozen=True)
class BigM:
    u_x: int                 # upper bound on per-edge traversal counts
    m_xy: int                # coefficient linking x below M*y
    m_wy: dict[int, int]     # per-node degree, tightened node-activation link
    m_z: int                 # private-edge deactivation coefficient


def big_m_values(cfg: Cfg) -> BigM:
    """Tight per-context constants replacing the single generic Big-M."""
    k = cfg.cyclomatic_complexity()
    return BigM(
        u_x=cfg.m,
        m_xy=cfg.m,
        m_wy={v: cfg.degree(v) for v in cfg.nodes},
        m_z=k,
    )


@dataclass
class VariableLayout:
    """Deterministic symbol-to-index map for one model instance.

    Names follow ``x_i_e`` / ``y_i_e`` / ``w_i_v`` / ``f_i_e`` / ``z_i_e``
    with path indices starting at 1; incremental models have a single
    path block and no ``z`` variables.
    """

    k: int
    has_connectivity: bool
    has_private: bool
    x: dict[tuple[int, int], int] = field(default_factory=dict)
    y: dict[tuple[int, int], int] = field(default_factory=dict)
    w: dict[tuple[int, int], int] = field(default_factory=dict)
    f: dict[tuple[int, int], int] = field(default_factory=dict)
    z: dict[tuple[int, int], int] = field(default_factory=dict)

    def path_counts(self, assignment, cfg: Cfg, i: int) -> list[int]:
        """Integer traversal counts of path block ``i`` in an assignment."""
        return [int(round(assignment[self.x[i, e]])) for e in range(cfg.m)]


@dataclass(frozen=True)
class IncrementalState:
    """Covered-edge bookkeeping carried between incremental iterations."""

    covered: frozenset[int] = frozenset()
    iteration: int = 1
    paths: tuple[PathWalk, ...] = ()

    def advance(self, path: PathWalk) -> "IncrementalState":
        return IncrementalState(
            covered=self.covered | path.support(),
            iteration=self.iteration + 1,
            paths=self.paths + (path,),
        )


def _add_path_block(model: MilpModel, layout: VariableLayout, cfg: Cfg,
                    big_m: BigM, i: int, connectivity: bool,
                    private: bool) -> None:
    for e in range(cfg.m):
        layout.x[i, e] = model.add_variable(f"x_{i}_{e}", VarKind.INTEGER, 0, big_m.u_x)
    for e in range(cfg.m):
        layout.y[i, e] = model.add_variable(f"y_{i}_{e}", VarKind.BINARY)
    for v in cfg.nodes:
        layout.w[i, v] = model.add_variable(f"w_{i}_{v}", VarKind.BINARY)
    if connectivity:
        for e in range(cfg.m):
            layout.f[i, e] = model.add_variable(
                f"f_{i}_{e}", VarKind.CONTINUOUS, 0, cfg.n - 1)
    if private:
        for e in range(cfg.m):
            layout.z[i, e] = model.add_variable(f"z_{i}_{e}", VarKind.BINARY)

    for v in cfg.nodes:
        coeffs = [(layout.x[i, e], 1.0) for e in cfg.out_edges(v)]
        coeffs += [(layout.x[i, e], -1.0) for e in cfg.in_edges(v)]
        rhs = 1.0 if v == cfg.source else (-1.0 if v == cfg.sink else 0.0)
        model.add_constraint(f"flow_{i}_{v}", coeffs, Relation.EQ, rhs, group="flow")

    if connectivity:
        for v in cfg.nodes:
            coeffs = [(layout.f[i, e], 1.0) for e in cfg.out_edges(v)]
            coeffs += [(layout.f[i, e], -1.0) for e in cfg.in_edges(v)]
            if v == cfg.source:
                # s supplies one commodity unit per visited non-source node.
                coeffs += [(layout.w[i, u], -1.0) for u in cfg.nodes if u != cfg.source]
            else:
                coeffs.append((layout.w[i, v], 1.0))
            model.add_constraint(f"aux_flow_{i}_{v}", coeffs, Relation.EQ, 0.0,
                                 group="aux_flow")
        for e in range(cfg.m):
            model.add_constraint(
                f"aux_cap_{i}_{e}",
                [(layout.f[i, e], 1.0), (layout.y[i, e], -(cfg.n - 1.0))],
                Relation.LE, 0.0, group="aux_cap")

    for e in range(cfg.m):
        model.add_constraint(
            f"link_xy_hi_{i}_{e}",
            [(layout.x[i, e], 1.0), (layout.y[i, e], -float(big_m.m_xy))],
            Relation.LE, 0.0, group="link_xy_hi")
        model.add_constraint(
            f"link_xy_lo_{i}_{e}",
            [(layout.x[i, e], 1.0), (layout.y[i, e], -1.0)],
            Relation.GE, 0.0, group="link_xy_lo")

    model.add_constraint(f"w_source_{i}", [(layout.w[i, cfg.source], 1.0)],
                         Relation.EQ, 1.0, group="w_source")
    for v in cfg.nodes:
        if v == cfg.source:
            continue
        incident = cfg.out_edges(v) + cfg.in_edges(v)
        model.add_constraint(
            f"link_wy_hi_{i}_{v}",
            [(layout.y[i, e], 1.0) for e in incident]
            + [(layout.w[i, v], -float(big_m.m_wy[v]))],
            Relation.LE, 0.0, group="link_wy_hi")
        model.add_constraint(
            f"link_wy_lo_{i}_{v}",
            [(layout.w[i, v], 1.0)] + [(layout.y[i, e], -1.0) for e in incident],
            Relation.LE, 0.0, group="link_wy_lo")

    if private:
        model.add_constraint(
            f"private_sum_{i}", [(layout.z[i, e], 1.0) for e in range(cfg.m)],
            Relation.GE, 1.0, group="private_sum")
        for e in range(cfg.m):
            model.add_constraint(
                f"private_link_{i}_{e}",
                [(layout.z[i, e], 1.0), (layout.y[i, e], -1.0)],
                Relation.LE, 0.0, group="private_link")
        if i > 1:
            for e in range(cfg.m):
                # z_{i,e} = 1 forces sum_{j<i} y_{j,e} = 0: triangular structure.
                model.add_constraint(
                    f"private_def_{i}_{e}",
                    [(layout.y[j, e], 1.0) for j in range(1, i)]
                    + [(layout.z[i, e], float(big_m.m_z))],
                    Relation.LE, float(big_m.m_z), group="private_def")


def build_holistic(cfg: Cfg, enforce_connectivity: bool = True
                   ) -> tuple[MilpModel, VariableLayout]:
    """All-k-paths model; toggling connectivity switches exactly the
    auxiliary-flow constraint groups (the subtour-elimination ablation)."""
    k = cfg.cyclomatic_complexity()
    big_m = big_m_values(cfg)
    model = MilpModel(name=f"holistic_k{k}")
    layout = VariableLayout(k=k, has_connectivity=enforce_connectivity,
                            has_private=True)
    for i in range(1, k + 1):
        _add_path_block(model, layout, cfg, big_m, i,
                        connectivity=enforce_connectivity, private=True)
    for e in range(cfg.m):
        model.add_constraint(
            f"coverage_{e}", [(layout.y[i, e], 1.0) for i in range(1, k + 1)],
            Relation.GE, 1.0, group="coverage")
    model.set_objective([(layout.x[i, e], 1.0)
                         for i in range(1, k + 1) for e in range(cfg.m)])
    return model, layout


def build_incremental(cfg: Cfg, state: IncrementalState, novelty: bool = True
                      ) -> tuple[MilpModel, VariableLayout]:
    """Single-path model against the covered-edge state.

    Raises :class:`AlreadyComplete` when coverage is already total on a
    later iteration: no path can introduce a new edge, so the run has
    deadlocked. On iteration 1 the degenerate model is still emitted
    (its independence row is then unsatisfiable and the solver proves it).
    """
    uncovered = [e for e in range(cfg.m) if e not in state.covered]
    if not uncovered and state.iteration > 1:
        raise AlreadyComplete(
            f"all {cfg.m} edges covered after {state.iteration - 1} paths")
    big_m = big_m_values(cfg)
    model = MilpModel(name=f"incremental_i{state.iteration}")
    layout = VariableLayout(k=1, has_connectivity=True, has_private=False)
    _add_path_block(model, layout, cfg, big_m, 1, connectivity=True,
                    private=False)
    model.add_constraint(
        "independence", [(layout.y[1, e], 1.0) for e in uncovered],
        Relation.GE, 1.0, group="independence")
    objective = [(layout.x[1, e], 1.0) for e in range(cfg.m)]
    if novelty:
        objective += [(layout.y[1, e], 1.0) for e in uncovered]
    model.set_objective(objective)
    return model, layout


def audit_groups(model: MilpModel) -> dict[str, int]:
    """Constraint-group histogram, the auditable face of a built model."""
    counts: dict[str, int] = {}
    for con in model.constraints:
        counts[con.group] = counts.get(con.group, 0) + 1
    return dict(sorted(counts.items()))
