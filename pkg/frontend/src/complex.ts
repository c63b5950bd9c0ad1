// Complex literals in the tool's expression syntax: a real number, or
// a single token `a+bi` / `a-bi` with no whitespace inside.

export interface Complex {
  re: number;
  im: number;
}

export const complex = (re: number, im = 0): Complex => ({ re, im });

const NUM = String.raw`[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?`;
const REAL_RE = new RegExp(`^${NUM}$`);
const COMPLEX_RE = new RegExp(
  String.raw`^(${NUM})([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$`,
);

export class LiteralError extends Error {}

export function parseComplex(text: string): Complex {
  const m = COMPLEX_RE.exec(text);
  if (m) return complex(Number(m[1]), Number(m[2]));
  // Number() also accepts hex and whitespace, so gate on the grammar first
  if (REAL_RE.test(text)) return complex(Number(text));
  throw new LiteralError(`not a numeric literal: ${JSON.stringify(text)}`);
}

export function formatReal(x: number): string {
  if (!Number.isFinite(x)) throw new LiteralError(`not finite: ${x}`);
  if (Number.isInteger(x) && Math.abs(x) < 1e16 && !Object.is(x, -0)) {
    return String(x);
  }
  if (Object.is(x, -0)) return "-0.0";
  return String(x);
}

export function formatComplex(v: Complex): string {
  if (v.im === 0) return formatReal(v.re);
  const sign = v.im > 0 ? "+" : "-";
  return `${formatReal(v.re)}${sign}${formatReal(Math.abs(v.im))}i`;
}

// JSON reports encode complex as [re, im] and plain reals as numbers
export type Encoded = number | [number, number];

export const decode = (v: Encoded): Complex =>
  typeof v === "number" ? complex(v) : complex(v[0], v[1]);

export const abs = (v: Complex): number => Math.hypot(v.re, v.im);
