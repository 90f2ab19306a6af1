/**
 * Per-function CFG extraction from TypeScript sources.
 *
 * Scope is plain structured control flow: if/else, while, do-while,
 * for / for-of / for-in, break, continue, return. Anything that creates
 * exception edges or irreducible jumps (try, throw, switch, labels) is
 * reported as UnsupportedConstruct for that function and extraction of
 * the remaining functions continues.
 */

import ts from "typescript";
import { Builder, CfgDocument } from "./cfg.js";

export class ParseError extends Error {
  constructor(public readonly file: string, message: string) {
    super(`${file}: ${message}`);
    this.name = "ParseError";
  }
}

export class UnsupportedConstruct extends Error {
  constructor(public readonly functionName: string,
              public readonly construct: string) {
    super(`${functionName}: unsupported construct '${construct}'`);
    this.name = "UnsupportedConstruct";
  }
}

export interface ExtractionResult {
  cfgs: CfgDocument[];
  /** Per-function failures; the corresponding functions emit nothing. */
  errors: UnsupportedConstruct[];
}

interface LoopContext {
  breakTarget: number;
  continueTarget: number;
}

class FunctionExtractor {
  private builder = new Builder();
  private returnPoints: number[] = [];
  private loops: LoopContext[] = [];

  constructor(private readonly name: string) {}

  extract(body: ts.Block, file: string): CfgDocument {
    const entry = this.builder.newNode(); // always node 0
    const exit = this.buildBlock(body, entry);
    const terminals = [...this.returnPoints];
    if (exit !== null) terminals.push(exit);
    if (terminals.length === 0) {
      throw new UnsupportedConstruct(this.name, "non-terminating control flow");
    }
    const sink = this.builder.newNode();
    for (const t of terminals) this.builder.addEdge(t, sink);
    return this.builder.toDocument(sink, this.name, file,
                                   terminals.length > 1);
  }

  /** Returns the fall-through node, or null when every path jumped away. */
  private buildBlock(block: ts.Block, current: number): number | null {
    let node: number | null = current;
    for (const stmt of block.statements) {
      if (node === null) break; // dead code after return/break/continue
      node = this.buildStatement(stmt, node);
    }
    return node;
  }

  private buildStatement(stmt: ts.Statement, current: number): number | null {
    if (ts.isBlock(stmt)) return this.buildBlock(stmt, current);
    if (ts.isIfStatement(stmt)) return this.buildIf(stmt, current);
    if (ts.isWhileStatement(stmt)) return this.buildWhile(stmt, current);
    if (ts.isDoStatement(stmt)) return this.buildDoWhile(stmt, current);
    if (ts.isForStatement(stmt)) return this.buildFor(stmt, current);
    if (ts.isForOfStatement(stmt) || ts.isForInStatement(stmt)) {
      return this.buildIteratorLoop(stmt, current);
    }
    if (ts.isReturnStatement(stmt)) {
      this.returnPoints.push(current);
      return null;
    }
    if (ts.isBreakStatement(stmt) || ts.isContinueStatement(stmt)) {
      if (stmt.label) {
        throw new UnsupportedConstruct(this.name, "labeled jump");
      }
      const loop = this.loops[this.loops.length - 1];
      if (!loop) {
        throw new UnsupportedConstruct(this.name, "jump outside a loop");
      }
      this.builder.addEdge(current, ts.isBreakStatement(stmt)
        ? loop.breakTarget : loop.continueTarget);
      return null;
    }
    if (ts.isVariableStatement(stmt) || ts.isExpressionStatement(stmt) ||
        ts.isEmptyStatement(stmt) || ts.isFunctionDeclaration(stmt)) {
      // straight-line code (or a nested declaration): no control transfer
      return current;
    }
    throw new UnsupportedConstruct(this.name, ts.SyntaxKind[stmt.kind]);
  }

  private buildIf(stmt: ts.IfStatement, current: number): number | null {
    const thenEntry = this.builder.newNode();
    this.builder.addEdge(current, thenEntry);
    const thenExit = this.buildStatement(stmt.thenStatement, thenEntry);

    let elseExit: number | null;
    if (stmt.elseStatement) {
      const elseEntry = this.builder.newNode();
      this.builder.addEdge(current, elseEntry);
      elseExit = this.buildStatement(stmt.elseStatement, elseEntry);
    } else {
      elseExit = current; // the false edge goes straight to the join
    }

    if (thenExit === null && elseExit === null) return null;
    const join = this.builder.newNode();
    if (thenExit !== null) this.builder.addEdge(thenExit, join);
    if (elseExit !== null) this.builder.addEdge(elseExit, join);
    return join;
  }

  private buildWhile(stmt: ts.WhileStatement, current: number): number {
    return this.buildConditionLoop(stmt.statement, current);
  }

  private buildIteratorLoop(stmt: ts.ForOfStatement | ts.ForInStatement,
                            current: number): number {
    // loop head doubles as the "more items?" decision
    return this.buildConditionLoop(stmt.statement, current);
  }

  private buildConditionLoop(body: ts.Statement, current: number): number {
    const cond = this.builder.newNode();
    this.builder.addEdge(current, cond);
    const exit = this.builder.newNode();
    this.builder.addEdge(cond, exit);
    const bodyEntry = this.builder.newNode();
    this.builder.addEdge(cond, bodyEntry);
    this.loops.push({ breakTarget: exit, continueTarget: cond });
    const bodyExit = this.buildStatement(body, bodyEntry);
    this.loops.pop();
    if (bodyExit !== null) this.builder.addEdge(bodyExit, cond);
    return exit;
  }

  private buildDoWhile(stmt: ts.DoStatement, current: number): number {
    const bodyEntry = this.builder.newNode();
    this.builder.addEdge(current, bodyEntry);
    const cond = this.builder.newNode();
    const exit = this.builder.newNode();
    this.loops.push({ breakTarget: exit, continueTarget: cond });
    const bodyExit = this.buildStatement(stmt.statement, bodyEntry);
    this.loops.pop();
    if (bodyExit !== null) this.builder.addEdge(bodyExit, cond);
    this.builder.addEdge(cond, bodyEntry); // back edge: run again
    this.builder.addEdge(cond, exit);
    return exit;
  }

  private buildFor(stmt: ts.ForStatement, current: number): number {
    if (!stmt.condition) {
      // for(;;) only terminates through break; keeping it out avoids
      // unreachable-exit special cases
      throw new UnsupportedConstruct(this.name, "for without condition");
    }
    // initializer and incrementor are straight-line; the incrementor runs
    // on the way back to the condition, so continue targets the condition
    return this.buildConditionLoop(stmt.statement, current);
  }
}

function functionName(fn: ts.FunctionDeclaration): string {
  return fn.name ? fn.name.text : "<anonymous>";
}

export function extractFromSource(file: string,
                                  source: string): ExtractionResult {
  const sf = ts.createSourceFile(file, source, ts.ScriptTarget.ES2022,
                                 /*setParentNodes*/ true);
  const diagnostics =
    (sf as unknown as { parseDiagnostics: ts.Diagnostic[] }).parseDiagnostics;
  if (diagnostics && diagnostics.length > 0) {
    const first = diagnostics[0];
    throw new ParseError(
      file, ts.flattenDiagnosticMessageText(first.messageText, " "));
  }

  const cfgs: CfgDocument[] = [];
  const errors: UnsupportedConstruct[] = [];
  for (const stmt of sf.statements) {
    if (!ts.isFunctionDeclaration(stmt) || !stmt.body) continue;
    const name = functionName(stmt);
    try {
      cfgs.push(new FunctionExtractor(name).extract(stmt.body, file));
    } catch (err) {
      if (err instanceof UnsupportedConstruct) {
        errors.push(err);
      } else {
        throw err;
      }
    }
  }
  return { cfgs, errors };
}
