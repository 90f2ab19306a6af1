"""Command-line entry point.

Exit codes: 0 on success, 1 when a generation run fails (strategy did not
produce a complete independent basis), 2 on input errors.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import bench as bench_mod
from . import synth as synth_mod
from .cfg import CfgError, dump_cfg, load_cfg
from .extract import dump_path_set, extract_walk
from .milp import SolveLimits, export_lp, import_solution, solve
from .models import (
    IncrementalState,
    audit_groups,
    build_holistic,
    build_incremental,
)
from .strategies import STRATEGY_NAMES, run_strategy

INPUT_ERROR = 2
GENERATION_FAILURE = 1


def _time_limit(value: float | None) -> float:
    if value is not None:
        return value
    env = os.environ.get("BASISPATH_TIME_LIMIT")
    return float(env) if env else 3600.0


def _load(path: str):
    try:
        return load_cfg(path)
    except (CfgError, OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(INPUT_ERROR)


@click.group()
def main() -> None:
    """Basis path generation toolkit."""


@main.command()
@click.argument("cfg_json", type=click.Path(exists=False))
def analyze(cfg_json: str) -> None:
    """Validate a CFG and report its cyclomatic complexity."""
    cfg = _load(cfg_json)
    click.echo(f"nodes: {cfg.n}")
    click.echo(f"edges: {cfg.m}")
    click.echo(f"source: {cfg.source}  sink: {cfg.sink}")
    if cfg.meta.get("virtual_sink"):
        click.echo("note: multiple exits normalized through a virtual sink")
    if cfg.meta.get("virtual_source"):
        click.echo("note: entry loop normalized through a virtual source")
    click.echo(f"cyclomatic complexity: {cfg.cyclomatic_complexity()}")


@main.command()
@click.argument("cfg_json")
@click.option("--strategy", type=click.Choice(STRATEGY_NAMES),
              default="incr-novelty", show_default=True)
@click.option("--time-limit", type=float, default=None,
              help="Per-solve budget in seconds (BASISPATH_TIME_LIMIT overrides"
                   " the 3600 s default).")
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Write the path-set JSON here.")
@click.option("--report", "report_path", type=click.Path(), default=None,
              help="Write the full per-iteration report JSON here.")
@click.option("--dot", "dot_path", type=click.Path(), default=None,
              help="Write a DOT rendering of the graph here.")
def generate(cfg_json: str, strategy: str, time_limit: float | None,
             out_path: str | None, report_path: str | None,
             dot_path: str | None) -> None:
    """Generate a basis path set for a CFG."""
    cfg = _load(cfg_json)
    limits = SolveLimits(time_limit=_time_limit(time_limit))
    report = run_strategy(strategy, cfg, limits)
    click.echo(f"strategy: {report.strategy}")
    click.echo(f"k: {report.k}  paths: {len(report.paths)}  "
               f"rank: {report.rank}  coverage: {report.edge_coverage}")
    for i, path in enumerate(report.paths, 1):
        nodes = " -> ".join(str(v) for v in path.node_sequence(cfg))
        click.echo(f"  path {i}: {nodes}")
    for note in report.notes:
        click.echo(f"note: {note}")
    if out_path:
        dump_path_set(report.path_set(cfg), out_path)
    if report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(cfg), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if dot_path:
        Path(dot_path).write_text(cfg.to_dot(), encoding="utf-8")
    click.echo("success" if report.success else "failure")
    if not report.success:
        sys.exit(GENERATION_FAILURE)


@main.command()
@click.option("--cc", type=int, required=True)
@click.option("--nodes", "n_nodes", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=int, default=1, show_default=True,
              help="Number of graphs; seeds run seed..seed+count-1.")
@click.option("--out-dir", type=click.Path(), required=True)
def synth(cc: int, n_nodes: int, seed: int, count: int, out_dir: str) -> None:
    """Generate random CFGs with fixed complexity into a corpus directory."""
    try:
        entries = synth_mod.generate_corpus(
            cc, n_nodes, range(seed, seed + count), out_dir)
    except synth_mod.InfeasibleParameters as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(INPUT_ERROR)
    click.echo(f"wrote {len(entries)} graphs + manifest to {out_dir}")


@main.command()
@click.option("--manifest", type=click.Path(exists=False), required=True)
@click.option("--strategies", "strategy_list", default="incr-novelty",
              show_default=True, help="Comma-separated strategy names.")
@click.option("--time-limit", type=float, default=60.0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--out-dir", type=click.Path(), required=True)
def bench(manifest: str, strategy_list: str, time_limit: float, jobs: int,
          out_dir: str) -> None:
    """Run strategies over a corpus and emit metric tables + figure."""
    strategies = [s.strip() for s in strategy_list.split(",") if s.strip()]
    for s in strategies:
        if s not in STRATEGY_NAMES:
            click.echo(f"error: unknown strategy {s!r}", err=True)
            sys.exit(INPUT_ERROR)
    if not Path(manifest).exists():
        click.echo(f"error: manifest {manifest} not found", err=True)
        sys.exit(INPUT_ERROR)
    records = bench_mod.run_experiment(manifest, strategies,
                                       time_limit=time_limit, jobs=jobs)
    written = bench_mod.save_outputs(records, out_dir)
    click.echo(bench_mod.render_text(bench_mod.aggregate(records)), nl=False)
    for path in written:
        click.echo(f"wrote {path}")


@main.command("export-lp")
@click.argument("cfg_json")
@click.option("--model", "model_kind",
              type=click.Choice(["holistic", "incremental"]),
              default="holistic", show_default=True)
@click.option("--no-connectivity", is_flag=True,
              help="Drop the subtour-elimination constraints (ablation).")
@click.option("--covered", "covered_path", type=click.Path(), default=None,
              help="JSON list of covered edge ids for the incremental model.")
@click.option("--greedy", is_flag=True,
              help="Length-only incremental objective (no novelty penalty).")
@click.option("--out", "out_path", type=click.Path(), required=True)
def export_lp_cmd(cfg_json: str, model_kind: str, no_connectivity: bool,
                  covered_path: str | None, greedy: bool, out_path: str) -> None:
    """Write the MILP for a CFG in CPLEX-LP format."""
    cfg = _load(cfg_json)
    if model_kind == "holistic":
        model, _ = build_holistic(cfg, enforce_connectivity=not no_connectivity)
    else:
        covered: frozenset[int] = frozenset()
        if covered_path:
            with open(covered_path, "r", encoding="utf-8") as fh:
                covered = frozenset(int(e) for e in json.load(fh))
        state = IncrementalState(covered=covered, iteration=1)
        model, _ = build_incremental(cfg, state, novelty=not greedy)
    Path(out_path).write_text(export_lp(model), encoding="utf-8")
    groups = ", ".join(f"{g}={c}" for g, c in audit_groups(model).items())
    click.echo(f"wrote {out_path} ({len(model.variables)} variables; {groups})")


@main.command("import-solution")
@click.argument("cfg_json")
@click.argument("model_kind", type=click.Choice(["holistic", "incremental"]))
@click.argument("solution_txt")
@click.option("--no-connectivity", is_flag=True)
@click.option("--covered", "covered_path", type=click.Path(), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
def import_solution_cmd(cfg_json: str, model_kind: str, solution_txt: str,
                        no_connectivity: bool, covered_path: str | None,
                        out_path: str | None) -> None:
    """Verify an external solver's assignment and decode its paths."""
    cfg = _load(cfg_json)
    if model_kind == "holistic":
        model, layout = build_holistic(cfg, enforce_connectivity=not no_connectivity)
    else:
        covered: frozenset[int] = frozenset()
        if covered_path:
            with open(covered_path, "r", encoding="utf-8") as fh:
                covered = frozenset(int(e) for e in json.load(fh))
        model, layout = build_incremental(
            cfg, IncrementalState(covered=covered, iteration=1))
    try:
        text = Path(solution_txt).read_text(encoding="utf-8")
        sol = import_solution(model, text)
    except (OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(INPUT_ERROR)
    paths = []
    for i in range(1, layout.k + 1):
        counts = layout.path_counts(sol.assignment, cfg, i)
        path = extract_walk(counts, cfg)
        paths.append(path)
        nodes = " -> ".join(str(v) for v in path.node_sequence(cfg))
        click.echo(f"path {i}: {nodes}")
    click.echo(f"objective: {sol.objective_value}")
    if out_path:
        from .extract import path_set_json
        dump_path_set(path_set_json(paths, cfg, "imported", True), out_path)


@main.command("solve-lp")
@click.argument("cfg_json")
@click.option("--model", "model_kind",
              type=click.Choice(["holistic", "incremental"]),
              default="incremental", show_default=True)
@click.option("--time-limit", type=float, default=None)
def solve_cmd(cfg_json: str, model_kind: str, time_limit: float | None) -> None:
    """Solve a model with the built-in solver and print the status."""
    cfg = _load(cfg_json)
    if model_kind == "holistic":
        model, _ = build_holistic(cfg)
    else:
        model, _ = build_incremental(cfg, IncrementalState())
    sol = solve(model, SolveLimits(time_limit=_time_limit(time_limit)))
    click.echo(f"status: {sol.status.value}")
    if sol.objective_value is not None:
        click.echo(f"objective: {sol.objective_value}")


if __name__ == "__main__":
    main()
