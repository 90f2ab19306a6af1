/**
 * CFG document model — the JSON shape consumed by the path-generation
 * toolkit's `validate_cfg` / `analyze`.
 *
 * Node ids are dense integers in creation order; node 0 is the entry and
 * the sink is always the last node allocated. Parallel edges and
 * self-loops are forbidden downstream, so `Builder.addEdge` splices a
 * pass-through node whenever a duplicate or loop edge would otherwise
 * appear (cyclomatic complexity is invariant under that splice: it adds
 * one node and one edge).
 */

export interface CfgDocument {
  nodes: number[];
  edges: [number, number][];
  source: number;
  sink: number;
  meta: {
    function: string;
    file: string;
    virtual_sink?: boolean;
  };
}

export class Builder {
  private edgeSet = new Set<string>();
  readonly edges: [number, number][] = [];
  private nextId = 0;

  newNode(): number {
    return this.nextId++;
  }

  get nodeCount(): number {
    return this.nextId;
  }

  addEdge(from: number, to: number): void {
    if (from === to || this.edgeSet.has(`${from}>${to}`)) {
      const mid = this.newNode();
      this.addEdge(from, mid);
      this.addEdge(mid, to);
      return;
    }
    this.edgeSet.add(`${from}>${to}`);
    this.edges.push([from, to]);
  }

  toDocument(sink: number, fn: string, file: string,
             virtualSink: boolean): CfgDocument {
    const meta: CfgDocument["meta"] = { function: fn, file };
    if (virtualSink) meta.virtual_sink = true;
    return {
      nodes: Array.from({ length: this.nextId }, (_, i) => i),
      edges: this.edges.map(([u, v]) => [u, v]),
      source: 0,
      sink,
      meta,
    };
  }
}

/** |E| - |V| + 2 for a single-component graph. */
export function cyclomaticComplexity(doc: CfgDocument): number {
  return doc.edges.length - doc.nodes.length + 2;
}
