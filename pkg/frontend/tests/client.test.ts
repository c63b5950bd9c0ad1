// Integration: drives the real tool over its public surface (argv,
// stdout, exit codes, JSON reports, QRESUM_MAX_TERMS).  Requires the
// Python package to be installed so that `qresum` is on PATH.

import { describe, expect, it } from "vitest";

import { ToolError, evalExpr, evalReport, runRaw, scan, verify } from "../src/client.js";
import { complex } from "../src/complex.js";

describe("evalExpr", () => {
  it("evaluates theta at a spiral zero to exactly 0", () => {
    expect(evalExpr("theta(q=0.5, z=-1)")).toEqual(complex(0));
  });

  it("evaluates a resummed series", () => {
    const v = evalExpr("resumA(q=0.5, x=0.35, b=0.3)");
    expect(v.im).toBe(0);
    expect(v.re).toBeCloseTo(2.740842060500689, 12);
  });

  it("surfaces syntax errors as exit 2 with a position", () => {
    try {
      evalExpr("theta(q=0.5 z=1)");
      throw new Error("should have thrown");
    } catch (e) {
      if (!(e instanceof ToolError)) throw e;
      expect(e.outcome.code).toBe(2);
      expect(e.message).toContain("column 13");
      expect(e.message).toContain("expected");
    }
  });

  it("honors the term cap through QRESUM_MAX_TERMS", () => {
    // bilateral series, convergent for |b/a| < |z| < 1
    const full = evalExpr("psi(q=0.5, z=0.5, a=0.7, b=0.2)", { maxTerms: 4000 });
    expect(full.re).toBeCloseTo(-0.6884511810072507, 12);
    try {
      evalExpr("psi(q=0.5, z=0.5, a=0.7, b=0.2)", { maxTerms: 3 });
      throw new Error("should have thrown");
    } catch (e) {
      if (!(e instanceof ToolError)) throw e;
      expect(e.outcome.code).toBe(2);
      expect(e.message).toContain("3 terms");
    }
  });
});

describe("evalReport", () => {
  it("returns the typed JSON form", () => {
    const r = evalReport("qpoch(q=0.5, a=0.5, n=2)");
    expect(r.expr).toBe("qpoch(q=0.5, a=0.5, n=2)");
    // (1-0.5)(1-0.25) = 0.375 exactly
    expect(r.value).toEqual([0.375, 0.0]);
  });
});

describe("verify", () => {
  it("passes a quick suite with a typed report", () => {
    const { outcome, report } = verify("watson", "quick");
    expect(outcome.code).toBe(0);
    expect(report.passed).toBe(true);
    expect(report.grid).toBe("quick");
    expect(report.rows.length).toBeGreaterThanOrEqual(5);
  });

  it("reports a graded failure as exit 1 with the report intact", () => {
    const { outcome, report } = verify("watson", "quick", { tol: 1e-30 });
    expect(outcome.code).toBe(1);
    expect(report.passed).toBe(false);
    expect(report.tol).toBe(1e-30);
    expect(report.rows.every((r) => !r.pass)).toBe(true);
  });

  it("is jobs-independent", () => {
    const a = verify("ramanujan", "quick", { jobs: 1 }).report;
    const b = verify("ramanujan", "quick", { jobs: 3 }).report;
    expect(a).toEqual(b);
  });

  it("raises usage errors (exit 2) as ToolError", () => {
    expect(() => verify("no-such-suite", "quick")).toThrow(ToolError);
  });
});

describe("scan", () => {
  it("runs a graded limit scan", () => {
    const { outcome, report } = scan("qpoch-ratio", {
      alpha: 0.7,
      z: "0.3",
      schedule: "k=4..7",
    });
    expect(outcome.code).toBe(0);
    expect(report.passed).toBe(true);
    expect(report.monotone).toBe(true);
    expect(report.q_values).toEqual([0.9375, 0.96875, 0.984375, 0.9921875]);
    for (let i = 1; i < report.errors.length; i++) {
      expect(report.errors[i]).toBeLessThan(report.errors[i - 1]);
    }
    expect(report.extrapolated).not.toBeNull();
    expect(report.extrapolated_error).not.toBeNull();
  });

  it("carries per-q identity residuals for the linear-sum scan", () => {
    const { report } = scan("linear-sum", { x: "0.5", schedule: "k=4..6" });
    expect(report.identity_errors).not.toBeNull();
    for (const e of report.identity_errors ?? []) {
      expect(e).toBeLessThan(1e-10);
    }
  });

  it("rejects a missing required parameter with exit 2", () => {
    try {
      scan("limitA", { x: "1.2" }); // beta missing
      throw new Error("should have thrown");
    } catch (e) {
      if (!(e instanceof ToolError)) throw e;
      expect(e.outcome.code).toBe(2);
    }
  });
});

describe("runRaw", () => {
  it("exposes the raw exit-code contract", () => {
    expect(runRaw(["eval", "theta(q=0.5, z=-1)"]).code).toBe(0);
    expect(runRaw(["verify", "watson", "--grid", "quick", "--tol", "1e-30"]).code).toBe(1);
    expect(runRaw(["eval", "nosuch(q=0.5)"]).code).toBe(2);
    expect(runRaw(["bogus-subcommand"]).code).toBe(2);
  });
});
