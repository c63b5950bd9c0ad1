"""Acceptance run: one test and one printed verdict line per criterion.

Criteria 1-13 drive the named verification suites on their full grids at
the stated tolerances; criterion 14 replays the frozen parser corpus and
the command exit-code contract.  Each criterion records one PASS/FAIL
verdict line; conftest prints the collected lines in an "acceptance
criteria" section at the end of the pytest run, past output capture.
"""

import conftest

from qresum.cli.expr import format_expr
from qresum.cli.main import main
from qresum.cli.parser import parse_expression
from qresum.errors import ArityError, ExprSyntaxError
from qresum.suites import run_suite

from parser_corpus import CORPUS


def _announce(num: int, name: str, passed: bool, detail: str):
    verdict = "PASS" if passed else "FAIL"
    conftest.VERDICTS.append(
        f"[criterion {num:02d}] {name}: {verdict} ({detail})")


def _suite_criterion(num: int, name: str, suite: str, tol: float,
                     expect_rows=None):
    res = run_suite(suite, tol=tol, jobs=4)
    detail = (f"{len(res.rows)} points, max rel {res.max_rel_err:.2e}, "
              f"tol {tol:g}")
    rows_ok = expect_rows is None or len(res.rows) == expect_rows
    _announce(num, name, res.passed and rows_ok, detail)
    assert rows_ok, f"expected {expect_rows} points, got {len(res.rows)}"
    assert res.passed, detail
    return res


def test_criterion_01_theta_series_vs_product():
    _suite_criterion(1, "theta series vs triple product", "theta-duality",
                     1e-12, expect_rows=80)


def test_criterion_02_theta_inversion_and_quasiperiodicity():
    _suite_criterion(2, "theta inversion + quasi-periodicity",
                     "theta-functional", 1e-12, expect_rows=80)


def test_criterion_03_bilateral_summation_formula():
    _suite_criterion(3, "bilateral 1psi1 summation, 100 random points",
                     "ramanujan", 1e-10, expect_rows=100)


def test_criterion_04_bilateral_lemma_closed_form():
    _suite_criterion(4, "0psi1 vs theta/product closed form",
                     "bilateral-lemma", 1e-10, expect_rows=30)


def test_criterion_05_pipeline_A_vs_closed_form():
    _suite_criterion(5, "Borel-Laplace pipeline A vs closed form",
                     "pipelineA", 1e-8, expect_rows=180)


def test_criterion_06_pipeline_B_vs_closed_form():
    _suite_criterion(6, "Borel-Laplace pipeline B vs closed form",
                     "pipelineB", 1e-8, expect_rows=180)


def test_criterion_07_connection_coefficients_elliptic():
    res = _suite_criterion(7, "connection coefficients q-periodic + factor",
                           "ellipticity", 1e-10)
    kinds = {r.identity for r in res.rows}
    assert kinds == {"ellipticity-A", "factorization-A",
                     "ellipticity-B", "factorization-B"}


def test_criterion_08_lambda_shift_invariance():
    _suite_criterion(8, "closed forms invariant under lambda -> q lambda",
                     "lambda-shift", 1e-10)


def test_criterion_09_laplace_after_borel_is_identity():
    res = _suite_criterion(9, "Laplace-after-Borel identity on 1phi0",
                           "laplace-borel", 1e-10)
    lams = {p[1] for r in res.rows for p in r.params if p[0] == "lambda"}
    assert len(lams) >= 3


def test_criterion_10_difference_equation_residuals():
    res = _suite_criterion(10, "q-difference residuals + formal recurrences",
                           "residuals", 1e-10)
    kinds = {r.identity for r in res.rows}
    assert any(k.startswith("recurrence") for k in kinds)


def test_criterion_11_watson_connection_formula():
    res = _suite_criterion(11, "Watson connection formula", "watson", 1e-8)
    assert len(res.rows) >= 5


def test_criterion_12_linear_sum_splits():
    _suite_criterion(12, "even/odd linear sum splits", "linear-sums", 1e-10)


def test_criterion_13_classical_limit_scans():
    res = run_suite("limits", tol=5e-2, jobs=4)
    names = [r.identity for r in res.rows]
    detail = (f"{len(res.rows)} scans, worst final err "
              f"{res.max_rel_err:.2e}, tol 5e-2, extrapolated tol 1e-2")
    _announce(13, "q->1 limit scans on the dyadic schedule",
              res.passed, detail)
    assert res.passed, detail
    # every scan family is exercised, pipelines at several points
    assert sum(n.startswith("limitA") for n in names) >= 3
    assert sum(n.startswith("limitB") for n in names) >= 2
    assert any("theta-ratio" in n for n in names)
    assert any("qpoch-ratio" in n for n in names)
    assert sum("linear-sum" in n for n in names) >= 2


def test_criterion_14_parser_corpus_and_exit_codes(capsys, tmp_path):
    corpus_ok = 0
    for text, expected in CORPUS:
        try:
            node = parse_expression(text)
            outcome = "ok"
            # printed form must parse back to the identical tree
            assert parse_expression(format_expr(node)) == node
        except ExprSyntaxError:
            outcome = "syntax"
        except ArityError:
            outcome = "arity"
        assert outcome == expected, (text, outcome, expected)
        corpus_ok += 1

    exit_cases = [
        (["eval", "theta(q=0.5, z=-1)"], 0),
        (["eval", "qpoch(q=0.4, a=0.2)"], 0),
        (["verify", "watson", "--grid", "quick"], 0),
        (["scan", "qpoch-ratio", "--alpha", "0.7", "--z", "0.3"], 0),
        (["verify", "watson", "--grid", "quick", "--tol", "1e-30"], 1),
        (["scan", "qpoch-ratio", "--alpha", "0.7", "--z", "0.3",
          "--tol", "1e-12"], 1),
        (["eval", "theta(q=0.5 z=1)"], 2),
        (["eval", "nosuch(q=0.5)"], 2),
        (["eval", "theta(q=0.5, nope=1)"], 2),
        (["eval", "phi(a=0.3, q=0.5, z=1.5)"], 2),
        (["verify", "no-such-suite"], 2),
        (["scan", "limitA", "--x", "1.2"], 2),
    ]
    codes_ok = 0
    for argv, want in exit_cases:
        got = main(argv)
        assert got == want, (argv, got, want)
        codes_ok += 1
    capsys.readouterr()

    _announce(14, "expression parser corpus + exit-code contract", True,
              f"{corpus_ok}/50 corpus cases, {codes_ok} exit-code cases")
