"""Batch experiment runner: per-run records, aggregated metric tables.

Metrics are pure aggregations over raw records; re-aggregating a saved
JSONL reproduces the table bit-exactly, and the parallel path only
changes wall times, never the aggregate columns.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .cfg import load_cfg
from .milp import SolveLimits
from .strategies import run_strategy
from .synth import CorpusEntry, load_manifest

HOLISTIC_CC_CAP = 10


@dataclass(frozen=True)
class RunRecord:
    cc: int
    n_nodes: int
    seed: int
    strategy: str
    success: bool
    edge_coverage: float
    independent_fraction: float
    wall_time: float
    skipped: str | None = None


def _one_run(args) -> RunRecord:
    entry, base_dir, strategy, time_limit, holistic_cap = args
    if strategy.startswith("holistic") and entry.cc > holistic_cap:
        return RunRecord(entry.cc, entry.n_nodes, entry.seed, strategy,
                         False, 0.0, 0.0, 0.0, skipped="scale")
    try:
        cfg = load_cfg(Path(base_dir) / entry.path)
        report = run_strategy(strategy, cfg, SolveLimits(time_limit=time_limit))
    except Exception as exc:  # a failed run must never abort the batch
        return RunRecord(entry.cc, entry.n_nodes, entry.seed, strategy,
                         False, 0.0, 0.0, 0.0, skipped=f"error: {exc}")
    return RunRecord(entry.cc, entry.n_nodes, entry.seed, strategy,
                     report.success, float(report.edge_coverage),
                     float(report.independent_fraction), report.total_time)


def run_experiment(manifest_path: str | Path, strategies: list[str],
                   time_limit: float = 60.0, jobs: int = 1,
                   holistic_cap: int = HOLISTIC_CC_CAP) -> list[RunRecord]:
    base_dir = Path(manifest_path).parent
    entries = load_manifest(manifest_path)
    tasks = [(e, str(base_dir), s, time_limit, holistic_cap)
             for s in strategies for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_one_run, tasks))
    else:
        records = [_one_run(t) for t in tasks]
    records.sort(key=lambda r: (r.cc, r.n_nodes, r.strategy, r.seed))
    return records


@dataclass(frozen=True)
class MetricsRow:
    cc: int
    n_nodes: int
    strategy: str
    runs: int
    success_rate: float        # percent
    edge_coverage: float       # mean percent
    independent_fraction: float  # mean percent, rank / k
    mean_time: float | None    # None when every run was skipped


def aggregate(records: list[RunRecord]) -> list[MetricsRow]:
    groups: dict[tuple[int, int, str], list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.cc, r.n_nodes, r.strategy), []).append(r)
    rows = []
    for (cc, n_nodes, strategy), recs in sorted(groups.items()):
        live = [r for r in recs if r.skipped is None]
        if not live:
            rows.append(MetricsRow(cc, n_nodes, strategy, len(recs),
                                   0.0, 0.0, 0.0, None))
            continue
        count = len(live)
        rows.append(MetricsRow(
            cc, n_nodes, strategy, len(recs),
            100.0 * sum(r.success for r in live) / count,
            100.0 * sum(r.edge_coverage for r in live) / count,
            100.0 * sum(r.independent_fraction for r in live) / count,
            sum(r.wall_time for r in live) / count,
        ))
    return rows


_COLUMNS = ("group", "method", "success %", "coverage %",
            "independent %", "time s")


def _cells(row: MetricsRow) -> tuple[str, ...]:
    return (
        f"{row.cc}, {row.n_nodes}",
        row.strategy,
        f"{row.success_rate:.1f}",
        f"{row.edge_coverage:.2f}" if row.mean_time is not None else "-",
        f"{row.independent_fraction:.2f}" if row.mean_time is not None else "-",
        f"{row.mean_time:.4f}" if row.mean_time is not None else "-",
    )


def render_csv(rows: list[MetricsRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_COLUMNS)
    for row in rows:
        writer.writerow(_cells(row))
    return buf.getvalue()


def render_text(rows: list[MetricsRow]) -> str:
    table = [_COLUMNS] + [_cells(r) for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(_COLUMNS))]
    lines = []
    for idx, row in enumerate(table):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def save_outputs(records: list[RunRecord], out_dir: str | Path) -> list[Path]:
    """Write raw records, CSV + text tables, and the summary figure."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = aggregate(records)
    written = []

    jsonl = out / "records.jsonl"
    with open(jsonl, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(asdict(r), sort_keys=True) + "\n")
    written.append(jsonl)

    csv_path = out / "metrics.csv"
    csv_path.write_text(render_csv(rows), encoding="utf-8")
    written.append(csv_path)

    txt_path = out / "metrics.txt"
    txt_path.write_text(render_text(rows), encoding="utf-8")
    written.append(txt_path)

    from .figures import success_rate_figure
    fig_path = out / "success_rates.png"
    success_rate_figure(rows, fig_path)
    written.append(fig_path)
    return written
