"""Control-flow graphs, source-to-sink walks, and the exact independence oracle.

The graph model is deliberately small: dense integer node ids, directed
edges with stable ids assigned in input order, a unique source and sink.
Everything downstream (model building, solving, benchmarking) indexes
variables by these edge ids, so edge order is part of the contract.

Linear independence of walks is decided over the rationals with exact
arithmetic; this module is the ground-truth oracle the generation
strategies are judged against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence


class CfgError(ValueError):
    """Base class for structural rejections during validation."""


class NoSourceOrSink(CfgError):
    pass


class SelfLoop(CfgError):
    def __init__(self, node: int):
        self.node = node
        super().__init__(f"self-loop at node {node}")


class ParallelEdge(CfgError):
    def __init__(self, edge: tuple[int, int]):
        self.edge = edge
        super().__init__(f"duplicate edge {edge[0]}->{edge[1]}")


class UnreachableNode(CfgError):
    def __init__(self, node: int):
        self.node = node
        super().__init__(f"node {node} is not reachable from the source")


class DeadEndNode(CfgError):
    def __init__(self, node: int):
        self.node = node
        super().__init__(f"node {node} has no path to the sink")


@dataclass(frozen=True)
class Cfg:
    """A validated control-flow graph. Construct via :func:`validate_cfg`."""

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    source: int
    sink: int
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_index(self) -> dict[tuple[int, int], int]:
        try:
            return self._edge_index  # type: ignore[attr-defined]
        except AttributeError:
            idx = {e: i for i, e in enumerate(self.edges)}
            object.__setattr__(self, "_edge_index", idx)
            return idx

    def _adjacency(self) -> tuple[dict[int, list[int]], dict[int, list[int]]]:
        try:
            return self._adj  # type: ignore[attr-defined]
        except AttributeError:
            out: dict[int, list[int]] = {v: [] for v in self.nodes}
            inc: dict[int, list[int]] = {v: [] for v in self.nodes}
            for eid, (u, v) in enumerate(self.edges):
                out[u].append(eid)
                inc[v].append(eid)
            object.__setattr__(self, "_adj", (out, inc))
            return out, inc

    def out_edges(self, v: int) -> list[int]:
        """Edge ids leaving ``v``, in ascending edge-id order."""
        return self._adjacency()[0][v]

    def in_edges(self, v: int) -> list[int]:
        """Edge ids entering ``v``, in ascending edge-id order."""
        return self._adjacency()[1][v]

    def degree(self, v: int) -> int:
        out, inc = self._adjacency()
        return len(out[v]) + len(inc[v])

    def cyclomatic_complexity(self) -> int:
        return self.m - self.n + 2

    def to_json(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "edges": [[u, v] for u, v in self.edges],
            "source": self.source,
            "sink": self.sink,
            "meta": dict(self.meta),
        }

    def to_dot(self, name: str = "cfg") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.nodes:
            if v == self.source:
                lines.append(f"  {v} [shape=doublecircle];")
            elif v == self.sink:
                lines.append(f"  {v} [shape=doubleoctagon];")
            else:
                lines.append(f"  {v} [shape=circle];")
        for u, v in self.edges:
            lines.append(f"  {u} -> {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def validate_cfg(raw: dict) -> Cfg:
    """Validate (and, when needed, normalize) a raw graph description.

    ``raw`` follows the interchange schema:
    ``{"nodes": [...], "edges": [[u, v], ...], "source": s, "sink": t}``.

    Normalization: when the declared sink is not the unique exit (several
    returns, or the sink has outgoing edges) a virtual sink is appended
    with an edge from every natural exit. A source with incoming edges is
    handled symmetrically with a virtual source. Complexity is computed
    on the normalized graph.
    """
    if not raw.get("nodes") or raw.get("edges") is None:
        raise NoSourceOrSink("empty node or edge list")
    if "source" not in raw or "sink" not in raw:
        raise NoSourceOrSink("source and sink must be declared")

    nodes = [int(v) for v in raw["nodes"]]
    edges = [(int(u), int(v)) for u, v in raw["edges"]]
    source = int(raw["source"])
    sink = int(raw["sink"])
    meta = dict(raw.get("meta", {}))

    if sorted(nodes) != list(range(len(nodes))):
        raise NoSourceOrSink("node ids must be dense integers 0..n-1")
    node_set = set(nodes)
    if source not in node_set or sink not in node_set:
        raise NoSourceOrSink(f"source {source} or sink {sink} not in node list")

    for u, v in edges:
        if u not in node_set or v not in node_set:
            raise NoSourceOrSink(f"edge {u}->{v} references an unknown node")
        if u == v:
            raise SelfLoop(u)
    seen: set[tuple[int, int]] = set()
    for e in edges:
        if e in seen:
            raise ParallelEdge(e)
        seen.add(e)

    out_deg = {v: 0 for v in nodes}
    in_deg = {v: 0 for v in nodes}
    for u, v in edges:
        out_deg[u] += 1
        in_deg[v] += 1

    # Sink normalization: collect natural exits; if the declared sink is
    # not the unique one, funnel every exit into a fresh virtual sink.
    exits = sorted(v for v in nodes if out_deg[v] == 0)
    if exits != [sink]:
        if not exits and out_deg[sink] > 0:
            raise NoSourceOrSink("no exit node: every node has outgoing edges")
        virtual = len(nodes)
        nodes.append(virtual)
        for v in exits:
            edges.append((v, virtual))
        sink = virtual
        meta["virtual_sink"] = True

    if in_deg.get(source, 0) > 0:
        virtual = len(nodes)
        nodes.append(virtual)
        edges.append((virtual, source))
        source = virtual
        meta["virtual_source"] = True

    if source == sink:
        raise NoSourceOrSink("source and sink coincide")

    cfg = Cfg(tuple(nodes), tuple(edges), source, sink, meta)

    reached = _reachable(cfg, forward=True)
    for v in cfg.nodes:
        if v not in reached:
            raise UnreachableNode(v)
    coreached = _reachable(cfg, forward=False)
    for v in cfg.nodes:
        if v not in coreached:
            raise DeadEndNode(v)
    return cfg


def _reachable(cfg: Cfg, forward: bool) -> set[int]:
    start = cfg.source if forward else cfg.sink
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        eids = cfg.out_edges(v) if forward else cfg.in_edges(v)
        for eid in eids:
            u, w = cfg.edges[eid]
            nxt = w if forward else u
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def load_cfg(path: str | Path) -> Cfg:
    with open(path, "r", encoding="utf-8") as fh:
        return validate_cfg(json.load(fh))


def dump_cfg(cfg: Cfg, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cfg.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")


@dataclass(frozen=True)
class PathWalk:
    """An ordered source-to-sink edge sequence; edges may repeat."""

    edge_sequence: tuple[int, ...]

    @classmethod
    def from_nodes(cls, cfg: Cfg, node_seq: Sequence[int]) -> "PathWalk":
        eids = []
        for u, v in zip(node_seq, node_seq[1:]):
            if (u, v) not in cfg.edge_index:
                raise ValueError(f"no edge {u}->{v} in graph")
            eids.append(cfg.edge_index[(u, v)])
        return cls(tuple(eids))

    @property
    def length(self) -> int:
        return len(self.edge_sequence)

    def incidence_vector(self, cfg: Cfg) -> tuple[int, ...]:
        counts = [0] * cfg.m
        for eid in self.edge_sequence:
            counts[eid] += 1
        return tuple(counts)

    def support(self) -> frozenset[int]:
        return frozenset(self.edge_sequence)

    def node_sequence(self, cfg: Cfg) -> list[int]:
        if not self.edge_sequence:
            return []
        nodes = [cfg.edges[self.edge_sequence[0]][0]]
        for eid in self.edge_sequence:
            nodes.append(cfg.edges[eid][1])
        return nodes

    def check(self, cfg: Cfg) -> None:
        """Raise ValueError unless this is a valid source-to-sink walk."""
        if not self.edge_sequence:
            raise ValueError("empty walk")
        if cfg.edges[self.edge_sequence[0]][0] != cfg.source:
            raise ValueError("walk does not start at the source")
        if cfg.edges[self.edge_sequence[-1]][1] != cfg.sink:
            raise ValueError("walk does not end at the sink")
        for a, b in zip(self.edge_sequence, self.edge_sequence[1:]):
            if cfg.edges[a][1] != cfg.edges[b][0]:
                raise ValueError(f"edges {a} and {b} are not adjacent")

    def is_valid(self, cfg: Cfg) -> bool:
        try:
            self.check(cfg)
        except ValueError:
            return False
        return True

    def to_json(self, cfg: Cfg) -> dict:
        return {
            "nodes": self.node_sequence(cfg),
            "edges": list(self.edge_sequence),
        }


@dataclass(frozen=True)
class BasisCandidateSet:
    paths: tuple[PathWalk, ...]

    @property
    def covered_edges(self) -> frozenset[int]:
        cov: set[int] = set()
        for p in self.paths:
            cov |= p.support()
        return frozenset(cov)


def independence_rank(paths: Iterable[PathWalk], cfg: Cfg) -> int:
    """Rank over the rationals of the walks' incidence matrix.

    Exact Gaussian elimination; no floating point anywhere, so this is
    usable as a ground truth for every generation strategy.
    """
    rows = [[Fraction(c) for c in p.incidence_vector(cfg)] for p in paths]
    rank = 0
    col = 0
    m = cfg.m
    while rank < len(rows) and col < m:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] / pr[col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], pr)]
        rank += 1
        col += 1
    return rank


def coverage_fraction(paths: Iterable[PathWalk], cfg: Cfg) -> Fraction:
    """|union of edge supports| / |E| as an exact fraction."""
    covered: set[int] = set()
    for p in paths:
        covered |= p.support()
    return Fraction(len(covered), cfg.m)
