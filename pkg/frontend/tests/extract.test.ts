import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

const HERE = path.dirname(fileURLToPath(import.meta.url));
import { cyclomaticComplexity, CfgDocument } from "../src/cfg.js";
import { ParseError, extractFromSource } from "../src/extract.js";

function one(source: string): CfgDocument {
  const result = extractFromSource("snippet.ts", source);
  expect(result.errors).toEqual([]);
  expect(result.cfgs).toHaveLength(1);
  return result.cfgs[0];
}

function structurallySound(doc: CfgDocument): void {
  const n = doc.nodes.length;
  expect(doc.nodes).toEqual(Array.from({ length: n }, (_, i) => i));
  expect(doc.source).toBe(0);
  expect(doc.sink).toBe(n - 1);
  const seen = new Set<string>();
  for (const [u, v] of doc.edges) {
    expect(u).not.toBe(v); // no self-loops
    const key = `${u}>${v}`;
    expect(seen.has(key)).toBe(false); // no parallel edges
    seen.add(key);
    expect(v).not.toBe(doc.source); // nothing enters the source
    expect(u).not.toBe(doc.sink); // nothing leaves the sink
  }
}

describe("control-flow shapes", () => {
  it("straight-line code has complexity 1", () => {
    const doc = one(`function f(x: number) { const y = x + 1; return y; }`);
    structurallySound(doc);
    expect(cyclomaticComplexity(doc)).toBe(1);
  });

  it("one if/else is complexity 2", () => {
    const doc = one(`function f(x: number) {
      if (x > 0) { return 1; } else { return -1; }
    }`);
    structurallySound(doc);
    expect(cyclomaticComplexity(doc)).toBe(2);
  });

  it("if without else is complexity 2", () => {
    const doc = one(`function f(x: number) {
      let y = 0;
      if (x > 0) { y = 1; }
      return y;
    }`);
    structurallySound(doc);
    expect(cyclomaticComplexity(doc)).toBe(2);
  });

  it("if/else nested in a while is complexity 3", () => {
    const doc = one(`function f(n: number) {
      let acc = 0;
      while (n > 0) {
        if (n % 2 === 0) { acc += n; } else { acc -= n; }
        n--;
      }
      return acc;
    }`);
    structurallySound(doc);
    expect(cyclomaticComplexity(doc)).toBe(3);
  });

  it("do-while is complexity 2", () => {
    const doc = one(`function f(n: number) {
      let i = 0;
      do { i++; } while (i < n);
      return i;
    }`);
    structurallySound(doc);
    expect(cyclomaticComplexity(doc)).toBe(2);
  });

  it("for and for-of each add one decision", () => {
    const doc = one(`function f(xs: number[]) {
      let total = 0;
      for (let i = 0; i < xs.length; i++) { total += xs[i]; }
      for (const x of xs) { total -= x; }
      return total;
    }`);
    structurallySound(doc);
    expect(cyclomaticComplexity(doc)).toBe(3);
  });

  it("break and continue keep complexity at decisions + 1", () => {
    const doc = one(`function f(xs: number[]) {
      let total = 0;
      for (const x of xs) {
        if (x < 0) { continue; }
        if (x > 100) { break; }
        total += x;
      }
      return total;
    }`);
    structurallySound(doc);
    expect(cyclomaticComplexity(doc)).toBe(4);
  });

  it("multiple returns are joined through a virtual sink", () => {
    const doc = one(`function f(x: number) {
      if (x > 0) { return 1; }
      return 0;
    }`);
    structurallySound(doc);
    expect(doc.meta.virtual_sink).toBe(true);
    const intoSink = doc.edges.filter(([, v]) => v === doc.sink);
    expect(intoSink.length).toBe(2);
  });

  it("single exit has no virtual sink marker", () => {
    const doc = one(`function f() { return 1; }`);
    expect(doc.meta.virtual_sink).toBeUndefined();
  });

  it("dead code after return is ignored", () => {
    const doc = one(`function f(x: number) {
      return x;
      x += 1;
    }`);
    structurallySound(doc);
    expect(cyclomaticComplexity(doc)).toBe(1);
  });
});

describe("failure modes", () => {
  it("try/catch is reported per function, extraction continues", () => {
    const result = extractFromSource("snippet.ts", `
      function bad(x: number) { try { return x; } catch { return 0; } }
      function good(x: number) { return x + 1; }
    `);
    expect(result.errors).toHaveLength(1);
    expect(result.errors[0].functionName).toBe("bad");
    expect(result.errors[0].construct).toBe("TryStatement");
    expect(result.cfgs.map((c) => c.meta.function)).toEqual(["good"]);
  });

  it("throw, switch, and unconditional for are unsupported", () => {
    const result = extractFromSource("snippet.ts", `
      function t(x: number) { throw new Error("no"); }
      function s(x: number) { switch (x) { default: return 0; } }
      function loop() { for (;;) { } }
    `);
    expect(result.cfgs).toEqual([]);
    expect(result.errors.map((e) => e.construct)).toEqual(
      ["ThrowStatement", "SwitchStatement", "for without condition"]);
  });

  it("labeled break is unsupported", () => {
    const result = extractFromSource("snippet.ts", `
      function f(n: number) {
        outer: while (n > 0) { while (n > 1) { break outer; } }
        return n;
      }
    `);
    expect(result.errors).toHaveLength(1);
  });

  it("syntax errors raise ParseError", () => {
    expect(() => extractFromSource("snippet.ts", "function f( {"))
      .toThrow(ParseError);
  });
});

describe("sample corpus", () => {
  const samplesDir = path.join(HERE, "..", "samples");
  const sources = fs.readdirSync(samplesDir).filter((n) => n.endsWith(".ts"));

  it("extracts every function with complexity in [1, 8]", () => {
    let count = 0;
    const ccs: number[] = [];
    for (const name of sources) {
      const text = fs.readFileSync(path.join(samplesDir, name), "utf-8");
      const result = extractFromSource(name, text);
      expect(result.errors).toEqual([]);
      for (const doc of result.cfgs) {
        structurallySound(doc);
        const cc = cyclomaticComplexity(doc);
        expect(cc).toBeGreaterThanOrEqual(1);
        expect(cc).toBeLessThanOrEqual(8);
        ccs.push(cc);
        count++;
      }
    }
    expect(count).toBeGreaterThanOrEqual(10);
    expect(Math.min(...ccs)).toBe(1); // the range is actually exercised
    expect(Math.max(...ccs)).toBeGreaterThanOrEqual(5);
  });

  it("is deterministic per source file", () => {
    for (const name of sources) {
      const text = fs.readFileSync(path.join(samplesDir, name), "utf-8");
      expect(extractFromSource(name, text))
        .toEqual(extractFromSource(name, text));
    }
  });
});
