import { describe, expect, it } from "vitest";

import {
  LiteralError,
  complex,
  decode,
  formatComplex,
  formatReal,
  parseComplex,
} from "../src/complex.js";

describe("parseComplex", () => {
  it("reads the literal forms the tool emits", () => {
    expect(parseComplex("0")).toEqual(complex(0));
    expect(parseComplex("2")).toEqual(complex(2));
    expect(parseComplex("-3")).toEqual(complex(-3));
    expect(parseComplex("0.5")).toEqual(complex(0.5));
    expect(parseComplex(".5")).toEqual(complex(0.5));
    expect(parseComplex("1e-13")).toEqual(complex(1e-13));
    expect(parseComplex("0.5-0.3i")).toEqual(complex(0.5, -0.3));
    expect(parseComplex("0+1i")).toEqual(complex(0, 1));
    expect(parseComplex("-1.5e-10+2000i")).toEqual(complex(-1.5e-10, 2000));
    expect(parseComplex("1.2+0.3i")).toEqual(complex(1.2, 0.3));
  });

  it("rejects anything outside the literal grammar", () => {
    for (const bad of ["", "abc", "1+2j", "1 + 2i", "0x10", "1e", "--3", "i", "2i"]) {
      expect(() => parseComplex(bad), bad).toThrow(LiteralError);
    }
  });
});

describe("formatComplex", () => {
  it("matches the tool's conventions", () => {
    expect(formatComplex(complex(0))).toBe("0");
    expect(formatComplex(complex(2))).toBe("2");
    expect(formatComplex(complex(2000))).toBe("2000");
    expect(formatComplex(complex(0.5, -0.3))).toBe("0.5-0.3i");
    expect(formatComplex(complex(0, 1))).toBe("0+1i");
    expect(formatComplex(complex(-1.5e-10, 2000))).toBe("-1.5e-10+2000i");
  });

  it("refuses non-finite parts", () => {
    expect(() => formatReal(Infinity)).toThrow(LiteralError);
    expect(() => formatComplex(complex(0, NaN))).toThrow(LiteralError);
  });
});

describe("round trip", () => {
  it("parse(format(v)) is exact for seeded random values", () => {
    // deterministic LCG so failures are reproducible
    let s = 12345;
    const next = () => {
      s = (s * 1103515245 + 12345) % 2147483648;
      return s / 2147483648;
    };
    for (let i = 0; i < 500; i++) {
      const mag = Math.exp((next() - 0.5) * 60);
      const v = complex(
        (next() - 0.5) * mag,
        i % 3 === 0 ? 0 : (next() - 0.5) * mag,
      );
      expect(parseComplex(formatComplex(v))).toEqual(v);
    }
  });

  it("keeps the sign of negative zero", () => {
    const v = parseComplex(formatComplex(complex(-0)));
    expect(Object.is(v.re, -0)).toBe(true);
  });

  it("handles the extreme magnitude notations", () => {
    for (const x of [1e21, -1e21, 1e-7, 123456789012345680000, 5e-324]) {
      expect(parseComplex(formatReal(x))).toEqual(complex(x));
    }
  });
});

describe("decode", () => {
  it("accepts both wire encodings", () => {
    expect(decode(3)).toEqual(complex(3));
    expect(decode([1.5, -2])).toEqual(complex(1.5, -2));
  });
});
