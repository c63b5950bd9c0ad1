// Subprocess client for the qresum CLI.  Everything goes through the
// tool's public surface: argv, stdout/stderr, exit codes (0 pass,
// 1 graded failure, 2 usage or domain error), JSON reports, and the
// QRESUM_MAX_TERMS environment variable.

import { spawnSync } from "node:child_process";

import { Complex, parseComplex } from "./complex.js";
import {
  EvalReport,
  Report,
  ScanReport,
  VerifyReport,
  parseReport,
} from "./report.js";

export interface RunOptions {
  bin?: string; // tool executable, default "qresum"
  tol?: number;
  lambda?: string; // complex literal, e.g. "1.1" or "0.9+0.1i"
  jobs?: number;
  maxTerms?: number; // delivered via QRESUM_MAX_TERMS
  timeoutMs?: number;
}

export interface RunOutcome {
  code: number;
  stdout: string;
  stderr: string;
}

export class ToolError extends Error {
  constructor(
    message: string,
    readonly outcome: RunOutcome,
  ) {
    super(message);
  }
}

function commonFlags(opts: RunOptions): string[] {
  const flags: string[] = [];
  if (opts.tol !== undefined) flags.push("--tol", String(opts.tol));
  if (opts.lambda !== undefined) flags.push("--lambda", opts.lambda);
  if (opts.jobs !== undefined) flags.push("--jobs", String(opts.jobs));
  return flags;
}

export function runRaw(args: string[], opts: RunOptions = {}): RunOutcome {
  const env = { ...process.env };
  if (opts.maxTerms !== undefined) {
    env.QRESUM_MAX_TERMS = String(opts.maxTerms);
  }
  const res = spawnSync(opts.bin ?? "qresum", args, {
    encoding: "utf8",
    env,
    timeout: opts.timeoutMs ?? 300_000,
  });
  if (res.error) {
    throw new ToolError(`could not run tool: ${res.error.message}`, {
      code: -1,
      stdout: "",
      stderr: "",
    });
  }
  return { code: res.status ?? -1, stdout: res.stdout, stderr: res.stderr };
}

function reportFrom(outcome: RunOutcome): Report {
  // exit 1 is a graded failure: the report is still on stdout
  if (outcome.code !== 0 && outcome.code !== 1) {
    throw new ToolError(outcome.stderr.trim() || "tool failed", outcome);
  }
  return parseReport(outcome.stdout);
}

export function evalExpr(expr: string, opts: RunOptions = {}): Complex {
  const outcome = runRaw(["eval", expr, ...commonFlags(opts)], opts);
  if (outcome.code !== 0) {
    throw new ToolError(outcome.stderr.trim() || "eval failed", outcome);
  }
  return parseComplex(outcome.stdout.trim());
}

export function evalReport(expr: string, opts: RunOptions = {}): EvalReport {
  const outcome = runRaw(
    ["eval", expr, "--format", "json", ...commonFlags(opts)],
    opts,
  );
  const report = reportFrom(outcome);
  if (report.command !== "eval") {
    throw new ToolError(`expected an eval report, got ${report.command}`, outcome);
  }
  return report;
}

export interface VerifyResult {
  outcome: RunOutcome;
  report: VerifyReport;
}

export function verify(
  suite: string,
  grid: "default" | "quick" = "default",
  opts: RunOptions = {},
): VerifyResult {
  const outcome = runRaw(
    ["verify", suite, "--grid", grid, "--format", "json", ...commonFlags(opts)],
    opts,
  );
  const report = reportFrom(outcome);
  if (report.command !== "verify") {
    throw new ToolError(`expected a verify report, got ${report.command}`, outcome);
  }
  return { outcome, report };
}

export type ScanKind =
  | "limitA"
  | "limitB"
  | "theta-ratio"
  | "qpoch-ratio"
  | "linear-sum";

export interface ScanParams {
  alpha?: number;
  beta?: number;
  x?: string; // complex literals, passed through verbatim
  z?: string;
  form?: "plain" | "scaled";
  schedule?: string; // "default", "k=LO..HI", or a comma list of q values
}

export interface ScanResult {
  outcome: RunOutcome;
  report: ScanReport;
}

export function scan(
  kind: ScanKind,
  params: ScanParams = {},
  opts: RunOptions = {},
): ScanResult {
  const args = ["scan", kind, "--format", "json"];
  if (params.alpha !== undefined) args.push("--alpha", String(params.alpha));
  if (params.beta !== undefined) args.push("--beta", String(params.beta));
  if (params.x !== undefined) args.push("--x", params.x);
  if (params.z !== undefined) args.push("--z", params.z);
  if (params.form !== undefined) args.push("--form", params.form);
  if (params.schedule !== undefined) args.push("--schedule", params.schedule);
  args.push(...commonFlags(opts));
  const outcome = runRaw(args, opts);
  const report = reportFrom(outcome);
  if (report.command !== "scan") {
    throw new ToolError(`expected a scan report, got ${report.command}`, outcome);
  }
  return { outcome, report };
}
