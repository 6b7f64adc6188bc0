"""Acceptance criteria, each at its stated tolerance and time budget.

Run with ``pytest tests/test_acceptance.py -s`` or directly as a script; each
criterion prints one PASS/FAIL line.
"""

import time
from fractions import Fraction

import pytest

from foliated.newton import lct_monomial, parse_ideal
from foliated.selfcheck import run_suite

RESULTS = {}


def report(number, title, ok, seconds, budget, detail=""):
    ok = ok and seconds < budget
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {seconds:.2f}s (budget {budget}s) {detail}".rstrip()
    print(line)
    RESULTS[number] = ok
    return ok


def check_suite(number, title, suite, budget):
    rep = run_suite(suite, seed=0)
    detail = f"{rep.passed} checks passed, {rep.failed} failed"
    if rep.notes:
        detail += f" {rep.notes}"
    ok = report(number, title, rep.ok, rep.seconds, budget, detail)
    assert rep.failed == 0, rep.failures
    assert ok


def test_criterion_1_three_cycle_threshold():
    start = time.perf_counter()
    res = lct_monomial(parse_ideal("x2^2*x3, x1*x3^2, x1^2*x2", 3))
    ok = res.value == Fraction(1) and res.verify()
    ok = report(1, "lct of the three-cycle ideal is exactly 1/1 with a valid witness", ok, time.perf_counter() - start, 1)
    assert ok


def test_criterion_2_toric_example():
    check_suite(2, "weighted projective plane example, n = 1..10", "toric_plane", 1)


def test_criterion_3_cycle_structure():
    check_suite(3, "nilpotent / cycle / cycle-form equivalence (512 exhaustive + 1000 random)", "cycle_structure", 30)


def test_criterion_4_lambda_selection():
    check_suite(4, "lambda selection certificates on 200 matrices x all boundaries", "lambda_selection", 60)


def test_criterion_5_howald_vs_brute_force():
    check_suite(5, "lct LP against brute-force weight search on 300 ideals", "howald", 60)


def test_criterion_6_two_dimensional_tangency():
    check_suite(6, "tangency determinant equals mu x b - lambda y a", "planar_tangency", 1)


def test_criterion_7_determinant_contraction():
    check_suite(7, "determinant against annihilator fields equals the contraction up to a constant", "determinant_contraction", 60)


def test_criterion_8_gamma_end_to_end():
    check_suite(8, "tangency divisor construction on 100 singular + 100 nonsingular fields", "gamma", 120)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
