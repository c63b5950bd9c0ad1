export {
  Complex,
  Encoded,
  LiteralError,
  abs,
  complex,
  decode,
  formatComplex,
  formatReal,
  parseComplex,
} from "./complex.js";
export {
  EvalReport,
  Report,
  ReportFormatError,
  SCHEMA,
  ScanReport,
  VerifyReport,
  VerifyRow,
  encodeReport,
  parseReport,
} from "./report.js";
export { CsvFormatError, CsvTable, PointRow, parseCsv, pointRows, toCsv } from "./csv.js";
export {
  RunOptions,
  RunOutcome,
  ScanKind,
  ScanParams,
  ScanResult,
  ToolError,
  VerifyResult,
  evalExpr,
  evalReport,
  runRaw,
  scan,
  verify,
} from "./client.js";
export { renderReport, renderScan, renderVerify } from "./render.js";
export { Sink, run } from "./main.js";
