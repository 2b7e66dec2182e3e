"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` for the per-criterion
output, or through the CLI as `qsv verify`.
"""

import fnmatch
import json
import random

import pytest

from qsv.appell import mock_theta
from qsv.cli import main as cli_main
from qsv.hecke import IntegralityViolation, string_coeff
from qsv.registry import (
    register_builtin_catalogue,
    run_check,
    run_suite,
    summarize,
)


def _report(name, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_1_full_suite_default_orders():
    """Full builtin suite passes with zero failures at the default orders:
    one-variable >= 200, two-variable decompositions >= 60, (5,.) >= 40."""
    cat = register_builtin_catalogue()
    assert len(cat) >= 60
    reports = run_suite("*")
    summary = summarize(reports)
    bad = [r.id for r in reports if r.status != "pass"]
    _report("criterion-1 full suite", summary["fail"] == 0 and summary["skipped"] == 0,
            f"{summary} first-bad={bad[:3]}")


def test_criterion_2_kac_peterson_golden():
    """The four classical eta/theta closed forms, coefficient-exact to 100."""
    for cid in ("eq:kacPeterson:C1_00", "eq:kacPeterson:C2_11",
                "eq:kacPeterson:C3_11", "eq:kacPeterson:C4_20"):
        rep = run_check(cid, order=100)
        _report(f"criterion-2 {cid}", rep.status == "pass",
                str(rep.first_difference or ""))


def test_criterion_3_mock_theta_dual_forms():
    """Eulerian and Appell/g3 forms agree exactly to order 200; the
    third-order opening coefficients match the classical display."""
    for name in ("A2", "mu2", "f3", "omega3", "psi3", "chi3", "f0", "f1"):
        rep = run_check(f"eq:mockDualForm:{name}", order=200)
        _report(f"criterion-3 dual form {name}", rep.status == "pass",
                str(rep.first_difference or ""))
    f3 = mock_theta("f3", "eulerian", 4)
    opening = [str(c) for _, c in f3.q_coefficients()]
    _report("criterion-3 f3 opening", opening == ["1", "1", "-2", "3"],
            str(opening))


def test_criterion_4_quasi_periodicity_path_independence():
    """Direct Hecke evaluation equals quasi-periodic reconstruction for
    |t| <= 3 across (p,j) in {(2,1),(3,2),(5,2)} to order 80."""
    cat = register_builtin_catalogue()
    ids = [cid for cid in cat
           if cid.startswith("thm:generalQuasiPeriodicityOddSpin:")]
    assert len(ids) == 6 * (1 + 2 + 2)
    for cid in ids:
        rep = run_check(cid, order=80)
        _report(f"criterion-4 {cid}", rep.status == "pass", rep.note or "")


NEW_RESULT_FAMILIES = (
    "thm:generalPolarFiniteOddSpin:*",
    "thm:pP38m1ell2rPlus1:*",
    "thm:pP38m1ell2rPlus1Alt:*",
    "cor:pP38m3ell2rPlus1:*",
    "cor:pP38m3ell2rPlus1Alt:*",
    "thm:pP512m1ell2rPlus1:*",
    "cor:pP512m3ell2rPlus1:*",
)


def test_criterion_5_new_results_gate_and_mutation():
    """The headline new identities all pass, and every family detects an
    injected single-coefficient perturbation."""
    cat = register_builtin_catalogue()
    rng = random.Random(20260308)
    for pattern in NEW_RESULT_FAMILIES:
        ids = [cid for cid in cat if fnmatch.fnmatch(cid, pattern)]
        assert ids, pattern
        for cid in ids:
            rep = run_check(cid)
            _report(f"criterion-5 {cid}", rep.status == "pass",
                    str(rep.first_difference or rep.note or ""))
        probe = rng.choice(ids)
        where = rng.randrange(3, 15)
        mutated = run_check(probe, perturb_q=where)
        detected = (mutated.status == "fail"
                    and mutated.first_difference is not None
                    and mutated.first_difference["q_exponent"] == str(where))
        _report(f"criterion-5 mutation {probe}+q^{where}", detected,
                str(mutated.first_difference))


def test_criterion_6_limit_lemmas():
    """Both displays of each removable-specialization lemma at order 150."""
    for cid in ("lemma:polarFinite23m1AppellVanish:first",
                "lemma:polarFinite23m1AppellVanish:second",
                "lemma:polarFinite23m3AppellVanish:first",
                "lemma:polarFinite23m3AppellVanish:second"):
        rep = run_check(cid, order=150)
        _report(f"criterion-6 {cid}", rep.status == "pass",
                str(rep.first_difference or ""))


SUITE_STRING_INSTANCES = [
    (2, 5, m, ell) for ell in range(4) for m in range(0, 4, 2)
    if (m - ell) % 2 == 0
] + [
    (2, 5, 1, 1), (2, 5, 1, 3), (2, 5, 3, 1),
    (3, 7, 0, 0), (3, 7, 0, 2), (3, 7, 1, 1), (3, 7, 1, 3), (3, 7, 1, 5),
    (3, 8, 0, 0), (3, 8, 2, 0), (3, 8, 0, 2), (3, 8, 2, 2),
    (3, 8, 1, 1), (3, 8, 3, 1), (3, 8, 1, 3), (3, 8, 3, 3), (3, 8, 1, 5),
    (5, 11, 0, 0), (5, 11, 1, 1), (5, 11, 0, 4), (5, 11, 1, 7),
    (5, 12, 0, 0), (5, 12, 2, 0), (5, 12, 1, 1), (5, 12, 3, 1), (5, 12, 1, 9),
]


def test_criterion_7_integrality_audit():
    """Every normalized string function in the suite's instance set has
    integer, real coefficients to its full working truncation; a violation
    raises and is a hard failure."""
    for (p, pp, m, ell) in SUITE_STRING_INSTANCES:
        order = 40 if p == 5 else 60
        try:
            series = string_coeff(p, pp, m, ell, order, normalized=True)
        except IntegralityViolation as exc:
            _report(f"criterion-7 ({p},{pp},{m},{ell})", False, str(exc))
            return
        for _, coeff in series.q_coefficients():
            assert coeff.is_rational_integer()
    _report("criterion-7 integrality audit", True,
            f"{len(SUITE_STRING_INSTANCES)} instances")


def test_criterion_8_determinism_across_thread_counts(tmp_path):
    """Two CLI runs of a suite slice at thread counts 1 and 8 produce
    byte-identical JSON reports."""
    out1 = tmp_path / "t1.json"
    out8 = tmp_path / "t8.json"
    args = ["verify", "--filter", "eq:*", "--format", "json"]
    rc1 = cli_main(args + ["--threads", "1", "--output", str(out1)])
    rc8 = cli_main(args + ["--threads", "8", "--output", str(out8)])
    same = out1.read_bytes() == out8.read_bytes()
    _report("criterion-8 determinism", rc1 == 0 and rc8 == 0 and same,
            f"rc1={rc1} rc8={rc8} identical={same}")
    payload = json.loads(out1.read_text())
    assert payload["summary"]["fail"] == 0
