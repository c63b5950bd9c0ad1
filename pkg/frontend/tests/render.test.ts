import { readFileSync } from "node:fs";

import { describe, expect, it } from "vitest";

import { renderReport } from "../src/render.js";
import { parseReport } from "../src/report.js";

const fixture = (name: string): string =>
  readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");

describe("renderReport", () => {
  it("summarizes a verify report", () => {
    const text = renderReport(parseReport(fixture("verify-watson.json")));
    expect(text).toContain("suite watson");
    expect(text).toContain("5 points");
    expect(text).toContain("PASS");
    expect(text).toContain("worst points:");
    expect(text).not.toContain("FAIL");
  });

  it("flags failing rows", () => {
    const r = parseReport(fixture("verify-watson.json"));
    if (r.command !== "verify") throw new Error("wrong kind");
    const broken = {
      ...r,
      passed: false,
      rows: r.rows.map((row, i) => (i === 0 ? { ...row, pass: false } : row)),
    };
    const text = renderReport(broken);
    expect(text).toContain("FAIL");
    expect(text).toContain("1 failing point(s)");
    expect(text).toContain("worst failures:");
  });

  it("lays out a scan ladder", () => {
    const text = renderReport(parseReport(fixture("scan-limitA.json")));
    expect(text).toContain("scan theorem-A[beta=0.5]");
    expect(text).toContain("q=0.9375");
    expect(text).toContain("strictly decreasing");
    expect(text).toContain("extrapolated 6.4461700084600855");
    expect(text).toContain("target 6.446425049899967");
  });

  it("prints an eval result", () => {
    const text = renderReport(parseReport(fixture("eval-resumA.json")));
    expect(text).toBe("resumA(q=0.5, x=0.35, b=0.3) = 2.740842060500689\n");
  });
});
