// The command-line front end, driven in-process through run(argv, sink).
// Offline commands (show, csv, usage errors) need no tool; the rest
// spawn the real `qresum` from PATH.

import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, describe, expect, it } from "vitest";

import { parseCsv, pointRows } from "../src/csv.js";
import { Sink, run } from "../src/main.js";
import { parseReport } from "../src/report.js";

function fixture(name: string): string {
  return fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));
}

function fixtureText(name: string): string {
  return readFileSync(fixture(name), "utf8");
}

interface Captured {
  sink: Sink;
  out(): string;
  err(): string;
}

function capture(): Captured {
  let out = "";
  let err = "";
  return {
    sink: { out: (t) => (out += t), err: (t) => (err += t) },
    out: () => out,
    err: () => err,
  };
}

const scratch = mkdtempSync(join(tmpdir(), "qresum-client-"));
afterAll(() => rmSync(scratch, { recursive: true, force: true }));

describe("usage", () => {
  it("prints usage on no arguments", () => {
    const c = capture();
    expect(run([], c.sink)).toBe(0);
    expect(c.out()).toContain("usage: qresum-client");
    expect(c.err()).toBe("");
  });

  it("rejects unknown commands with exit 2", () => {
    const c = capture();
    expect(run(["frobnicate"], c.sink)).toBe(2);
    expect(c.err()).toContain("unknown command frobnicate");
    expect(c.err()).toContain("usage:");
  });

  it("rejects unknown, duplicate, and valueless flags", () => {
    for (const argv of [
      ["verify", "watson", "--colour", "red"],
      ["verify", "watson", "--tol", "1e-10", "--tol", "1e-12"],
      ["verify", "watson", "--tol"],
    ]) {
      const c = capture();
      expect(run(argv, c.sink)).toBe(2);
    }
  });
});

describe("show", () => {
  it("renders a saved verify report", () => {
    const c = capture();
    expect(run(["show", fixture("verify-watson.json")], c.sink)).toBe(0);
    expect(c.out()).toContain("suite watson (grid default): 5 points");
    expect(c.out()).toContain("PASS");
  });

  it("renders a saved scan report", () => {
    const c = capture();
    expect(run(["show", fixture("scan-limitA.json")], c.sink)).toBe(0);
    expect(c.out()).toContain("scan theorem-A[beta=0.5]");
    expect(c.out()).toContain("strictly decreasing");
  });

  it("fails with exit 2 on a missing file", () => {
    const c = capture();
    expect(run(["show", join(scratch, "absent.json")], c.sink)).toBe(2);
    expect(c.err()).toContain("qresum-client:");
  });

  it("rejects extra positional arguments", () => {
    const c = capture();
    expect(run(["show", "a.json", "b.json"], c.sink)).toBe(2);
  });
});

describe("csv", () => {
  it("converts a verify report byte-for-byte", () => {
    const c = capture();
    expect(run(["csv", fixture("verify-linear-sums.json")], c.sink)).toBe(0);
    expect(c.out()).toBe(fixtureText("verify-linear-sums.csv"));
  });

  it("converts a scan report byte-for-byte", () => {
    const c = capture();
    expect(run(["csv", fixture("scan-qpoch-ratio.json")], c.sink)).toBe(0);
    expect(c.out()).toBe(fixtureText("scan-qpoch-ratio.csv"));
  });

  it("refuses eval reports", () => {
    const c = capture();
    expect(run(["csv", fixture("eval-resumA.json")], c.sink)).toBe(2);
    expect(c.err()).toContain("no CSV form");
  });
});

describe("eval (subprocess)", () => {
  it("passes the tool's stdout through", () => {
    const c = capture();
    expect(run(["eval", "theta(q=0.5, z=-1)"], c.sink)).toBe(0);
    expect(c.out()).toBe("0\n");
  });

  it("passes tool usage errors through with exit 2", () => {
    const c = capture();
    expect(run(["eval", "theta(q=0.5 z=1)"], c.sink)).toBe(2);
    expect(c.err()).toContain("qresum:");
    expect(c.out()).toBe("");
  });
});

describe("verify (subprocess)", () => {
  it("renders, saves JSON, and saves CSV in one pass", () => {
    const jsonPath = join(scratch, "watson.json");
    const csvPath = join(scratch, "watson.csv");
    const c = capture();
    const code = run(
      ["verify", "watson", "--grid", "quick",
        "--save", jsonPath, "--csv-out", csvPath],
      c.sink,
    );
    expect(code).toBe(0);
    expect(c.out()).toContain("suite watson (grid quick):");
    expect(c.out()).toContain("PASS");

    const saved = parseReport(readFileSync(jsonPath, "utf8"));
    if (saved.command !== "verify") throw new Error("wrong report kind");
    expect(saved.passed).toBe(true);
    expect(saved.rows.length).toBeGreaterThanOrEqual(5);

    const rows = pointRows(parseCsv(readFileSync(csvPath, "utf8")));
    expect(rows.length).toBe(saved.rows.length);
    expect(rows.every((r) => r.pass)).toBe(true);
  });

  it("returns 1 on a graded failure but still renders", () => {
    const c = capture();
    const code = run(
      ["verify", "watson", "--grid", "quick", "--tol", "1e-30"],
      c.sink,
    );
    expect(code).toBe(1);
    expect(c.out()).toContain("FAIL");
  });

  it("maps tool usage errors (unknown suite) to exit 2", () => {
    const c = capture();
    expect(run(["verify", "no-such-suite"], c.sink)).toBe(2);
    expect(c.err()).toContain("qresum-client:");
  });
});

describe("scan (subprocess)", () => {
  it("renders a monotone ladder and saves the report", () => {
    const jsonPath = join(scratch, "qpoch-ratio.json");
    const c = capture();
    const code = run(
      ["scan", "qpoch-ratio", "--alpha", "0.7", "--z", "0.3",
        "--schedule", "k=4..7", "--save", jsonPath],
      c.sink,
    );
    expect(code).toBe(0);
    expect(c.out()).toContain("strictly decreasing");
    expect(c.out()).toContain("extrapolated");

    const saved = parseReport(readFileSync(jsonPath, "utf8"));
    if (saved.command !== "scan") throw new Error("wrong report kind");
    expect(saved.monotone).toBe(true);
    expect(saved.q_values.length).toBe(4);
  });

  it("rejects unknown kinds locally", () => {
    const c = capture();
    expect(run(["scan", "limitC"], c.sink)).toBe(2);
    expect(c.err()).toContain("scan kind must be one of");
  });

  it("rejects a bad form value locally", () => {
    const c = capture();
    expect(run(["scan", "theta-ratio", "--form", "fancy"], c.sink)).toBe(2);
    expect(c.err()).toContain("unknown form fancy");
  });
});
