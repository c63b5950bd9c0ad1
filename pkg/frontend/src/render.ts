// Plain-text rendering of reports for terminals.

import { decode, formatComplex } from "./complex.js";
import { Report, ScanReport, VerifyReport } from "./report.js";

const sci = (x: number): string => x.toExponential(3);

const verdict = (ok: boolean): string => (ok ? "PASS" : "FAIL");

function paramText(params: Record<string, number | [number, number]>): string {
  return Object.entries(params)
    .map(([k, v]) => `${k}=${formatComplex(decode(v))}`)
    .join(" ");
}

export function renderVerify(r: VerifyReport, worst = 3): string {
  const lines: string[] = [];
  const failed = r.rows.filter((row) => !row.pass);
  const maxErr = r.rows.reduce((m, row) => Math.max(m, row.rel_err), 0);
  lines.push(
    `suite ${r.suite} (grid ${r.grid}): ${r.rows.length} points, ` +
      `tol ${r.tol}, max rel err ${sci(maxErr)}: ${verdict(r.passed)}`,
  );
  if (failed.length > 0) {
    lines.push(`${failed.length} failing point(s):`);
  }
  const shown = [...(failed.length > 0 ? failed : r.rows)]
    .sort((a, b) => b.rel_err - a.rel_err)
    .slice(0, worst);
  const label = failed.length > 0 ? "worst failures" : "worst points";
  lines.push(`${label}:`);
  for (const row of shown) {
    lines.push(
      `  ${row.identity} ${paramText(row.params)}: rel err ` +
        `${sci(row.rel_err)} [${verdict(row.pass)}]`,
    );
  }
  return lines.join("\n") + "\n";
}

export function renderScan(r: ScanReport): string {
  const lines: string[] = [];
  const ps = paramText(r.params);
  lines.push(`scan ${r.scan}${ps ? ` (${ps})` : ""}: ${verdict(r.passed)}`);
  lines.push(`target ${formatComplex(decode(r.target))}, tol ${r.tol}`);
  r.q_values.forEach((q, i) => {
    const idErr =
      r.identity_errors === null ? "" : `  identity err ${sci(r.identity_errors[i])}`;
    lines.push(
      `  q=${q}  value ${formatComplex(decode(r.values[i]))}  ` +
        `err ${sci(r.errors[i])}${idErr}`,
    );
  });
  lines.push(`errors ${r.monotone ? "strictly decreasing" : "NOT monotone"}`);
  if (r.extrapolated !== null && r.extrapolated_error !== null) {
    lines.push(
      `extrapolated ${formatComplex(decode(r.extrapolated))} ` +
        `(err ${sci(r.extrapolated_error)})`,
    );
  }
  return lines.join("\n") + "\n";
}

export function renderReport(r: Report): string {
  if (r.command === "verify") return renderVerify(r);
  if (r.command === "scan") return renderScan(r);
  return `${r.expr} = ${formatComplex(decode(r.value))}\n`;
}
