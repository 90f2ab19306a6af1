#!/usr/bin/env node
/**
 * CLI: `cfg-extract <file|dir> --out-dir D`
 *
 * Writes one CFG JSON per function, named `<source-stem>__<function>.json`,
 * plus an `extraction.json` index. Per-function failures are reported on
 * stderr and do not stop the batch; the exit code is 1 only when nothing
 * was extracted at all or a source failed to parse.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import { ParseError, extractFromSource } from "./extract.js";
import { cyclomaticComplexity } from "./cfg.js";

function usage(): never {
  console.error("usage: cfg-extract <file|dir> --out-dir <dir>");
  process.exit(2);
}

function sourceFiles(target: string): string[] {
  const stat = fs.statSync(target);
  if (stat.isFile()) return [target];
  return fs.readdirSync(target)
    .filter((n) => n.endsWith(".ts") || n.endsWith(".js"))
    .sort()
    .map((n) => path.join(target, n));
}

export function main(argv: string[]): number {
  const args = argv.slice(2);
  let target: string | null = null;
  let outDir: string | null = null;
  for (let i = 0; i < args.length; i++) {
    if (args[i] === "--out-dir") {
      outDir = args[++i] ?? null;
    } else if (!target) {
      target = args[i];
    } else {
      usage();
    }
  }
  if (!target || !outDir) usage();
  if (!fs.existsSync(target)) {
    console.error(`error: ${target} does not exist`);
    return 2;
  }
  fs.mkdirSync(outDir, { recursive: true });

  const index: { file: string; function: string; path: string; cc: number }[] = [];
  let failures = 0;
  for (const file of sourceFiles(target)) {
    let result;
    try {
      result = extractFromSource(file, fs.readFileSync(file, "utf-8"));
    } catch (err) {
      if (err instanceof ParseError) {
        console.error(`error: ${err.message}`);
        return 2;
      }
      throw err;
    }
    for (const err of result.errors) {
      failures++;
      console.error(`skip: ${file}: ${err.message}`);
    }
    const stem = path.basename(file).replace(/\.[jt]s$/, "");
    for (const cfg of result.cfgs) {
      const name = `${stem}__${cfg.meta.function}.json`;
      fs.writeFileSync(path.join(outDir, name),
                       JSON.stringify(cfg, null, 2) + "\n");
      index.push({ file, function: cfg.meta.function, path: name,
                   cc: cyclomaticComplexity(cfg) });
      console.log(`${name}: cc=${cyclomaticComplexity(cfg)}`);
    }
  }
  fs.writeFileSync(path.join(outDir, "extraction.json"),
                   JSON.stringify(index, null, 2) + "\n");
  if (index.length === 0) {
    console.error("error: no functions extracted");
    return 1;
  }
  return 0;
}

process.exit(main(process.argv));
