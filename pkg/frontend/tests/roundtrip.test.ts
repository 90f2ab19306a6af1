/**
 * Round trip against the Python toolkit: every extracted sample CFG must
 * pass its validator and yield a complete independent basis with rank
 * equal to the cyclomatic complexity. Requires the `basispath` CLI on
 * PATH (editable install of the package in the repository root).
 */

import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { beforeAll, describe, expect, it } from "vitest";
import { cyclomaticComplexity, CfgDocument } from "../src/cfg.js";
import { extractFromSource } from "../src/extract.js";

const HERE = path.dirname(fileURLToPath(import.meta.url));
const SAMPLES = path.join(HERE, "..", "samples");

interface Extracted {
  doc: CfgDocument;
  file: string;
}

let workDir: string;
let extracted: Extracted[];

beforeAll(() => {
  workDir = fs.mkdtempSync(path.join(os.tmpdir(), "cfg-roundtrip-"));
  extracted = [];
  for (const name of fs.readdirSync(SAMPLES).sort()) {
    if (!name.endsWith(".ts")) continue;
    const text = fs.readFileSync(path.join(SAMPLES, name), "utf-8");
    const result = extractFromSource(name, text);
    expect(result.errors).toEqual([]);
    for (const doc of result.cfgs) {
      const file = path.join(workDir,
        `${name.replace(/\.ts$/, "")}__${doc.meta.function}.json`);
      fs.writeFileSync(file, JSON.stringify(doc, null, 2));
      extracted.push({ doc, file });
    }
  }
  expect(extracted.length).toBeGreaterThanOrEqual(10);
});

describe("toolkit round trip", () => {
  it("every sample CFG passes analyze with the extractor's complexity", () => {
    for (const { doc, file } of extracted) {
      const out = execFileSync("basispath", ["analyze", file],
                               { encoding: "utf-8" });
      const match = out.match(/cyclomatic complexity: (\d+)/);
      expect(match, file).not.toBeNull();
      expect(Number(match![1])).toBe(cyclomaticComplexity(doc));
    }
  }, 120_000);

  it("basis generation succeeds on every sample with rank = CC", () => {
    for (const { doc, file } of extracted) {
      const reportFile = file.replace(/\.json$/, ".report.json");
      execFileSync("basispath",
                   ["generate", file, "--strategy", "incr-novelty",
                    "--report", reportFile],
                   { encoding: "utf-8" });
      const report = JSON.parse(fs.readFileSync(reportFile, "utf-8"));
      expect(report.success, file).toBe(true);
      expect(report.rank, file).toBe(cyclomaticComplexity(doc));
      expect(report.paths.length, file).toBe(cyclomaticComplexity(doc));
    }
  }, 300_000);
});
