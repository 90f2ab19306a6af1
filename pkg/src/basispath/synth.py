"""Random CFG generator with exact cyclomatic complexity and node count.

Construction: a random source-to-sink spine visits every node once
(reachability and co-reachability for free), then the remaining
``cc + n - 2 - (n - 1)`` edges are sampled uniformly without replacement
from all admissible pairs. Back edges relative to the spine create loops;
the spine keeps every such cycle on a source-to-sink route.

Seeding uses :class:`random.Random`, i.e. the Mersenne Twister with
CPython's documented, platform-stable ``shuffle``/``sample`` behavior, so
checked-in corpora regenerate bit-identically.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .cfg import Cfg, validate_cfg


class InfeasibleParameters(ValueError):
    pass


def generate(cc: int, n_nodes: int, seed: int) -> Cfg:
    """Random validated CFG with exactly the requested complexity."""
    if cc < 1:
        raise InfeasibleParameters(f"cc must be >= 1, got {cc}")
    if n_nodes < 2:
        raise InfeasibleParameters(f"need at least 2 nodes, got {n_nodes}")
    n = n_nodes
    m = cc + n - 2
    extras = m - (n - 1)

    rng = random.Random(seed)
    source, sink = 0, n - 1
    interior = list(range(1, n - 1))
    rng.shuffle(interior)
    spine = [source] + interior + [sink]
    order = {v: i for i, v in enumerate(spine)}

    edges = list(zip(spine, spine[1:]))
    taken = set(edges)
    # Admissible extra pairs: no self-loops, nothing into the source or out
    # of the sink, no duplicate of a spine edge.
    candidates = sorted(
        (u, v)
        for u in range(n) if u != sink
        for v in range(1, n) if v != u and (u, v) not in taken
    )
    if extras > len(candidates):
        raise InfeasibleParameters(
            f"cc={cc}, n={n} needs {extras} extra edges, "
            f"only {len(candidates)} admissible pairs exist")
    edges += rng.sample(candidates, extras)

    cfg = validate_cfg({
        "nodes": list(range(n)),
        "edges": [[u, v] for u, v in edges],
        "source": source,
        "sink": sink,
        "meta": {"generator": {"cc": cc, "n_nodes": n, "seed": seed}},
    })
    assert cfg.cyclomatic_complexity() == cc
    # mark back edges for inspection; spine order defines direction
    cfg.meta["back_edges"] = sum(
        1 for u, v in edges if order[v] <= order[u])
    return cfg


@dataclass(frozen=True)
class CorpusEntry:
    cc: int
    n_nodes: int
    seed: int
    path: str


def generate_corpus(cc: int, n_nodes: int, seeds: range | list[int],
                    out_dir: str | Path) -> list[CorpusEntry]:
    """Write one CFG JSON per seed plus a manifest, all deterministic."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for seed in seeds:
        cfg = generate(cc, n_nodes, seed)
        name = f"cfg_cc{cc}_n{n_nodes}_s{seed}.json"
        with open(out / name, "w", encoding="utf-8") as fh:
            json.dump(cfg.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        entries.append(CorpusEntry(cc, n_nodes, seed, name))
    manifest = [
        {"cc": e.cc, "n_nodes": e.n_nodes, "seed": e.seed, "path": e.path}
        for e in entries
    ]
    with open(out / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return entries


def load_manifest(path: str | Path) -> list[CorpusEntry]:
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    return [CorpusEntry(r["cc"], r["n_nodes"], r["seed"], r["path"]) for r in raw]
