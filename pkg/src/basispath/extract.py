"""Decode solver flow assignments into executable walks.

A flow that satisfies per-node conservation can still hide cycles that
never touch the main source-to-sink trail; those decode failures are
exactly the pathology the connectivity constraints exist to rule out,
so :class:`DisconnectedFlow` doubles as the subtour detector.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

from .cfg import Cfg, PathWalk


class DisconnectedFlow(ValueError):
    """Flow units remained after trail construction: the flow has subtours."""

    def __init__(self, remaining: dict[int, int]):
        self.remaining = dict(remaining)
        edges = ", ".join(f"edge {e} x{c}" for e, c in sorted(remaining.items()))
        super().__init__(f"flow is not a single connected trail; left over: {edges}")


def _check_conservation(counts: Sequence[int], cfg: Cfg) -> None:
    for v in cfg.nodes:
        net = sum(counts[e] for e in cfg.out_edges(v)) - \
            sum(counts[e] for e in cfg.in_edges(v))
        want = 1 if v == cfg.source else (-1 if v == cfg.sink else 0)
        if net != want:
            raise ValueError(f"flow conservation violated at node {v}: net {net}")


def extract_walk(counts: Sequence[int], cfg: Cfg) -> PathWalk:
    """Hierholzer-style decoding of integer edge counts into one walk.

    Builds the trail from the source taking the smallest unconsumed edge
    id at every step, then splices leftover cycles at trail nodes in
    ascending smallest-edge-id order; the order makes decoded walks
    deterministic. Raises :class:`DisconnectedFlow` when flow survives
    the splice sweep.
    """
    counts = [int(c) for c in counts]
    if any(c < 0 for c in counts):
        raise ValueError("negative edge count")
    _check_conservation(counts, cfg)
    remaining = list(counts)

    def next_edge(v: int) -> int | None:
        for eid in cfg.out_edges(v):
            if remaining[eid] > 0:
                return eid
        return None

    # Main trail: conservation guarantees it can only stop at the sink.
    trail: list[int] = []
    v = cfg.source
    while True:
        eid = next_edge(v)
        if eid is None:
            break
        remaining[eid] -= 1
        trail.append(eid)
        v = cfg.edges[eid][1]
    if v != cfg.sink:
        raise ValueError(f"trail stalled at node {v} before the sink")

    # Cycle splicing: leftover flow is a circulation, so a walk started at
    # any trail node can only stall back at that node.
    pos = 0
    while pos <= len(trail):
        at = cfg.source if pos == 0 else cfg.edges[trail[pos - 1]][1]
        eid = next_edge(at)
        if eid is None:
            pos += 1
            continue
        cycle = []
        v = at
        while True:
            eid = next_edge(v)
            if eid is None:
                break
            remaining[eid] -= 1
            cycle.append(eid)
            v = cfg.edges[eid][1]
            if v == at:
                break
        if v != at:
            raise ValueError(f"leftover flow is not a circulation at node {v}")
        trail[pos:pos] = cycle
        # Step into the spliced cycle; this node reappears at its end, so
        # further cycles here attach after the smaller-id one already taken.
        pos += 1

    if any(remaining):
        raise DisconnectedFlow({e: c for e, c in enumerate(remaining) if c})
    return PathWalk(tuple(trail))


def verify_connected_support(support: Iterable[int], cfg: Cfg) -> bool:
    """True iff every edge in the support is reachable from the source
    through support edges alone (vacuously true for an empty support)."""
    active = set(support)
    if not active:
        return True
    reached = {cfg.source}
    frontier = [cfg.source]
    while frontier:
        v = frontier.pop()
        for eid in cfg.out_edges(v):
            if eid in active:
                w = cfg.edges[eid][1]
                if w not in reached:
                    reached.add(w)
                    frontier.append(w)
    return all(cfg.edges[eid][0] in reached for eid in active)


def path_set_json(paths: Sequence[PathWalk], cfg: Cfg, strategy: str,
                  success: bool) -> dict:
    return {
        "k": cfg.cyclomatic_complexity(),
        "paths": [p.to_json(cfg) for p in paths],
        "strategy": strategy,
        "success": success,
    }


def dump_path_set(doc: dict, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
