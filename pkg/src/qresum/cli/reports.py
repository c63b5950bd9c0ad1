"""Report serialization: JSON (schema qresum-report/1) and CSV.

The JSON report is a plain dict of JSON types; complex numbers are
encoded as two-element ``[re, im]`` arrays so that
``from_json(to_json(report)) == report`` holds exactly (Python floats
serialize via their shortest round-trip repr).

CSV holds one row per grid point with the columns

    identity, <point parameters...>, lhs, rhs, rel_err, pass

where the parameter columns are the union of the parameter names over
all rows in first-appearance order.  Numbers are written as expression
literals (``a+bi``), which keeps every cell comma-free.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Dict, List, Optional

from ..limits import LimitReport
from ..suites import SuiteResult
from .expr import format_complex

SCHEMA = "qresum-report/1"


def _enc(v) -> object:
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (int, float)):
        return float(v)
    return v


def _enc_opt(v) -> object:
    return None if v is None else _enc(v)


def verify_report(res: SuiteResult, grid: str) -> dict:
    rows = []
    for r in res.rows:
        rows.append({
            "identity": r.identity,
            "params": {k: _enc(v) for k, v in r.params},
            "lhs": _enc(complex(r.lhs)),
            "rhs": _enc(complex(r.rhs)),
            "rel_err": float(r.rel_err),
            "pass": bool(r.passed),
        })
    return {
        "schema": SCHEMA,
        "command": "verify",
        "suite": res.name,
        "grid": grid,
        "tol": float(res.tol),
        "passed": bool(res.passed),
        "rows": rows,
    }


def scan_report(rep: LimitReport, params: Dict[str, object], tol: float,
                passed: bool) -> dict:
    return {
        "schema": SCHEMA,
        "command": "scan",
        "scan": rep.name,
        "params": {k: _enc(v) for k, v in params.items() if v is not None},
        "tol": float(tol),
        "q_values": [float(q) for q in rep.q_values],
        "values": [_enc(complex(v)) for v in rep.values],
        "target": _enc(complex(rep.target)),
        "errors": [float(e) for e in rep.errors],
        "monotone": bool(rep.monotone),
        "extrapolated": _enc_opt(rep.extrapolated),
        "extrapolated_error": _enc_opt(rep.extrapolated_error),
        "identity_errors": (None if rep.identity_errors is None
                            else [float(e) for e in rep.identity_errors]),
        "passed": bool(passed),
    }


def eval_report(expr_text: str, value: complex) -> dict:
    return {
        "schema": SCHEMA,
        "command": "eval",
        "expr": expr_text,
        "value": _enc(complex(value)),
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def from_json(text: str) -> dict:
    return json.loads(text)


def _cell(v) -> str:
    if isinstance(v, list):            # encoded complex
        return format_complex(complex(v[0], v[1]))
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_complex(complex(v, 0.0))
    return str(v)


def _point_rows(report: dict) -> List[Dict[str, object]]:
    if report["command"] == "verify":
        return report["rows"]
    if report["command"] == "scan":
        rows = []
        for qv, val, err in zip(report["q_values"], report["values"],
                                report["errors"]):
            params = dict(report["params"])
            params["q"] = qv
            rows.append({"identity": report["scan"], "params": params,
                         "lhs": val, "rhs": report["target"],
                         "rel_err": err, "pass": report["passed"]})
        return rows
    raise ValueError(f"no CSV form for command {report['command']!r}")


def to_csv(report: dict) -> str:
    rows = _point_rows(report)
    keys: List[str] = []
    for r in rows:
        for k in r["params"]:
            if k not in keys:
                keys.append(k)
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["identity", *keys, "lhs", "rhs", "rel_err", "pass"])
    for r in rows:
        w.writerow([r["identity"],
                    *[_cell(r["params"][k]) if k in r["params"] else ""
                      for k in keys],
                    _cell(r["lhs"]), _cell(r["rhs"]),
                    _cell(r["rel_err"]), _cell(r["pass"])])
    return out.getvalue()


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    raise ValueError(f"unknown report format {fmt!r}")


def write_report(report: dict, fmt: str, out: Optional[str]) -> Optional[str]:
    """Render and either write to ``out`` or return the text for stdout."""
    text = render(report, fmt)
    if out is None:
        return text
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)
    return None
