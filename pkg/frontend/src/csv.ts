// The tool's CSV: one row per grid point,
//   identity, <param columns...>, lhs, rhs, rel_err, pass
// Every cell is comma-free by construction (numbers are written as
// `a+bi` expression literals), so splitting on commas is exact.

import { Complex, Encoded, decode, formatComplex, parseComplex } from "./complex.js";
import { ScanReport, VerifyReport } from "./report.js";

export interface CsvTable {
  header: string[];
  rows: string[][];
}

export class CsvFormatError extends Error {}

export function parseCsv(text: string): CsvTable {
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0) throw new CsvFormatError("empty CSV");
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((l, i) => {
    const cells = l.split(",");
    if (cells.length !== header.length) {
      throw new CsvFormatError(
        `row ${i + 1} has ${cells.length} cells, header has ${header.length}`,
      );
    }
    return cells;
  });
  return { header, rows };
}

export interface PointRow {
  identity: string;
  params: Record<string, Complex | null>;
  lhs: Complex;
  rhs: Complex;
  relErr: number;
  pass: boolean;
}

const FIXED_HEAD = ["identity"];
const FIXED_TAIL = ["lhs", "rhs", "rel_err", "pass"];

export function pointRows(table: CsvTable): PointRow[] {
  const h = table.header;
  if (h[0] !== "identity" || h.slice(-4).join(",") !== FIXED_TAIL.join(",")) {
    throw new CsvFormatError(`unexpected header: ${h.join(",")}`);
  }
  const paramNames = h.slice(FIXED_HEAD.length, h.length - FIXED_TAIL.length);
  return table.rows.map((cells) => {
    const params: Record<string, Complex | null> = {};
    paramNames.forEach((name, i) => {
      const cell = cells[FIXED_HEAD.length + i];
      params[name] = cell === "" ? null : parseComplex(cell);
    });
    const n = cells.length;
    return {
      identity: cells[0],
      params,
      lhs: parseComplex(cells[n - 4]),
      rhs: parseComplex(cells[n - 3]),
      relErr: Number(cells[n - 2]),
      pass: cells[n - 1] === "true",
    };
  });
}

const cell = (v: Encoded): string => formatComplex(decode(v));

interface RawRow {
  identity: string;
  params: Record<string, Encoded>;
  lhs: Encoded;
  rhs: Encoded;
  rel_err: number;
  pass: boolean;
}

function rawRows(report: VerifyReport | ScanReport): RawRow[] {
  if (report.command === "verify") return report.rows;
  return report.q_values.map((q, i) => ({
    identity: report.scan,
    params: { ...report.params, q },
    lhs: report.values[i],
    rhs: report.target,
    rel_err: report.errors[i],
    pass: report.passed,
  }));
}

// Converts a saved JSON report to the tool's CSV layout without
// rerunning anything; column order is the first-appearance union.
export function toCsv(report: VerifyReport | ScanReport): string {
  const rows = rawRows(report);
  const keys: string[] = [];
  for (const r of rows) {
    for (const k of Object.keys(r.params)) {
      if (!keys.includes(k)) keys.push(k);
    }
  }
  const out: string[] = [];
  out.push(["identity", ...keys, ...FIXED_TAIL].join(","));
  for (const r of rows) {
    const paramCells = keys.map((k) => (k in r.params ? cell(r.params[k]) : ""));
    out.push(
      [
        r.identity,
        ...paramCells,
        cell(r.lhs),
        cell(r.rhs),
        cell(r.rel_err),
        r.pass ? "true" : "false",
      ].join(","),
    );
  }
  return out.join("\n") + "\n";
}
