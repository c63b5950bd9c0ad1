#!/usr/bin/env node
// qresum-client: drive the qresum tool, validate its reports, render
// them for humans, and convert saved reports between formats.
//
//   qresum-client eval "theta(q=0.5, z=-1)"
//   qresum-client verify watson --grid quick --save report.json
//   qresum-client scan limitA --beta 0.5 --x 1.2
//   qresum-client show report.json
//   qresum-client csv report.json
//
// Exit codes mirror the tool: 0 pass, 1 graded failure, 2 usage or
// domain error.

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { RunOptions, ScanKind, ScanParams, runRaw, scan, verify } from "./client.js";
import { toCsv } from "./csv.js";
import { encodeReport, parseReport } from "./report.js";
import { renderReport } from "./render.js";

export interface Sink {
  out(text: string): void;
  err(text: string): void;
}

const USAGE = `usage: qresum-client <command> ...
  eval EXPR [--tol T] [--lambda L] [--max-terms N]
  verify SUITE [--grid default|quick] [--tol T] [--jobs N] [--lambda L]
               [--max-terms N] [--save FILE] [--csv-out FILE]
  scan KIND [--alpha A] [--beta B] [--x X] [--z Z] [--form plain|scaled]
            [--schedule S] [--tol T] [--max-terms N] [--save FILE]
  show FILE     render a saved JSON report
  csv FILE      convert a saved JSON report to CSV on stdout
`;

class UsageError extends Error {}

interface Flags {
  [key: string]: string;
}

function parseFlags(argv: string[], allowed: string[]): Flags {
  const flags: Flags = {};
  for (let i = 0; i < argv.length; i += 2) {
    const name = argv[i];
    if (!name.startsWith("--")) throw new UsageError(`unexpected argument ${name}`);
    const key = name.slice(2);
    if (!allowed.includes(key)) throw new UsageError(`unknown flag --${key}`);
    if (i + 1 >= argv.length) throw new UsageError(`flag --${key} needs a value`);
    if (key in flags) throw new UsageError(`duplicate flag --${key}`);
    flags[key] = argv[i + 1];
  }
  return flags;
}

function runOptions(flags: Flags): RunOptions {
  const opts: RunOptions = {};
  if ("tol" in flags) opts.tol = Number(flags.tol);
  if ("lambda" in flags) opts.lambda = flags.lambda;
  if ("jobs" in flags) opts.jobs = Number(flags.jobs);
  if ("max-terms" in flags) opts.maxTerms = Number(flags["max-terms"]);
  if ("bin" in flags) opts.bin = flags.bin;
  return opts;
}

const SCAN_KINDS: ScanKind[] = [
  "limitA",
  "limitB",
  "theta-ratio",
  "qpoch-ratio",
  "linear-sum",
];

export function run(argv: string[], sink: Sink): number {
  try {
    const [cmd, ...rest] = argv;
    if (!cmd || cmd === "help" || cmd === "--help") {
      sink.out(USAGE);
      return 0;
    }

    if (cmd === "eval") {
      const [expr, ...flagArgs] = rest;
      if (!expr) throw new UsageError("eval needs an expression");
      const flags = parseFlags(flagArgs, ["tol", "lambda", "max-terms", "bin"]);
      const opts = runOptions(flags);
      const outcome = runRaw(["eval", expr], opts);
      if (outcome.code !== 0) {
        sink.err(outcome.stderr);
        return outcome.code;
      }
      sink.out(outcome.stdout);
      return 0;
    }

    if (cmd === "verify") {
      const [suite, ...flagArgs] = rest;
      if (!suite) throw new UsageError("verify needs a suite name");
      const flags = parseFlags(flagArgs, [
        "grid", "tol", "jobs", "lambda", "max-terms", "save", "csv-out", "bin",
      ]);
      const grid = (flags.grid ?? "default") as "default" | "quick";
      if (grid !== "default" && grid !== "quick") {
        throw new UsageError(`unknown grid ${flags.grid}`);
      }
      const { outcome, report } = verify(suite, grid, runOptions(flags));
      sink.out(renderReport(report));
      if (flags.save) writeFileSync(flags.save, encodeReport(report));
      if (flags["csv-out"]) writeFileSync(flags["csv-out"], toCsv(report));
      return outcome.code;
    }

    if (cmd === "scan") {
      const [kind, ...flagArgs] = rest;
      if (!kind || !SCAN_KINDS.includes(kind as ScanKind)) {
        throw new UsageError(`scan kind must be one of ${SCAN_KINDS.join(", ")}`);
      }
      const flags = parseFlags(flagArgs, [
        "alpha", "beta", "x", "z", "form", "schedule",
        "tol", "lambda", "max-terms", "save", "bin",
      ]);
      const params: ScanParams = {};
      if ("alpha" in flags) params.alpha = Number(flags.alpha);
      if ("beta" in flags) params.beta = Number(flags.beta);
      if ("x" in flags) params.x = flags.x;
      if ("z" in flags) params.z = flags.z;
      if ("schedule" in flags) params.schedule = flags.schedule;
      if ("form" in flags) {
        if (flags.form !== "plain" && flags.form !== "scaled") {
          throw new UsageError(`unknown form ${flags.form}`);
        }
        params.form = flags.form;
      }
      const { outcome, report } = scan(kind as ScanKind, params, runOptions(flags));
      sink.out(renderReport(report));
      if (flags.save) writeFileSync(flags.save, encodeReport(report));
      return outcome.code;
    }

    if (cmd === "show" || cmd === "csv") {
      const [file, ...extra] = rest;
      if (!file || extra.length > 0) throw new UsageError(`${cmd} needs one file`);
      const report = parseReport(readFileSync(file, "utf8"));
      if (cmd === "show") {
        sink.out(renderReport(report));
        return 0;
      }
      if (report.command === "eval") {
        throw new UsageError("eval reports have no CSV form");
      }
      sink.out(toCsv(report));
      return 0;
    }

    throw new UsageError(`unknown command ${cmd}`);
  } catch (e) {
    if (e instanceof UsageError) {
      sink.err(`qresum-client: ${e.message}\n${USAGE}`);
    } else {
      sink.err(`qresum-client: ${(e as Error).message}\n`);
    }
    return 2;
  }
}

const entry = process.argv[1];
if (entry && import.meta.url === pathToFileURL(entry).href) {
  const sink: Sink = {
    out: (t) => process.stdout.write(t),
    err: (t) => process.stderr.write(t),
  };
  process.exit(run(process.argv.slice(2), sink));
}
