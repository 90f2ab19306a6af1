"""Matplotlib rendering for benchmark reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def success_rate_figure(rows, path: str | Path) -> None:
    """Grouped bar chart of success rates per (cc, nodes) group."""
    groups = sorted({(r.cc, r.n_nodes) for r in rows})
    strategies = sorted({r.strategy for r in rows})
    lookup = {(r.cc, r.n_nodes, r.strategy): r for r in rows}

    fig, ax = plt.subplots(figsize=(1.8 + 1.6 * len(groups), 4.0))
    width = 0.8 / max(len(strategies), 1)
    for si, strategy in enumerate(strategies):
        xs, ys = [], []
        for gi, (cc, n) in enumerate(groups):
            row = lookup.get((cc, n, strategy))
            xs.append(gi + si * width)
            ys.append(row.success_rate if row and row.mean_time is not None else 0.0)
        ax.bar(xs, ys, width=width, label=strategy)
    ax.set_xticks([gi + 0.4 - width / 2 for gi in range(len(groups))])
    ax.set_xticklabels([f"CC={cc}\n|V|={n}" for cc, n in groups])
    ax.set_ylabel("success rate (%)")
    ax.set_ylim(0, 105)
    ax.legend(fontsize=8)
    ax.set_title("Basis generation success rate by strategy")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
