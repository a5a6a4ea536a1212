"""Acceptance gate: every criterion at its stated scale, one line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the [PASS]/[FAIL]
lines; each criterion also is its own test, so plain -v gives the same
per-criterion verdicts through test outcomes.  Seeds are fixed; each
criterion runs well under its 60 second budget.
"""

import random

from limtower.suites import (
    criterion_adjunction_window,
    criterion_closed_forms,
    criterion_decomposition,
    criterion_finite_ml,
    criterion_locality_closure,
    criterion_quotient_vanishing,
    criterion_shift_invariance,
    criterion_snf_certificates,
    criterion_ulm_length,
    criterion_walker_normal_form,
)

SEED = 0


def _report(number: int, result) -> None:
    tag = "PASS" if result.passed else "FAIL"
    print(f"[{tag}] criterion {number}: {result.name} - {result.detail}")
    assert result.passed, f"criterion {number} failed: {result.detail}"


def test_criterion_01_snf_certificates():
    _report(1, criterion_snf_certificates(random.Random(SEED), trials=500))


def test_criterion_02_finite_ml_soundness():
    _report(2, criterion_finite_ml(random.Random(SEED + 1), trials=200))


def test_criterion_03_shift_invariance():
    _report(3, criterion_shift_invariance())


def test_criterion_04_image_quotient_vanishing():
    _report(4, criterion_quotient_vanishing(random.Random(SEED + 2), trials=120))


def test_criterion_05_multiplication_closed_forms():
    _report(5, criterion_closed_forms())


def test_criterion_06_decomposition_signature():
    _report(6, criterion_decomposition(random.Random(SEED + 3), trials=100))


def test_criterion_07_locality_closure():
    _report(7, criterion_locality_closure(random.Random(SEED + 4), trials=100))


def test_criterion_08_walker_normal_form():
    _report(8, criterion_walker_normal_form(random.Random(SEED + 5), total_trials=10_000))


def test_criterion_09_ulm_length():
    _report(9, criterion_ulm_length())


def test_criterion_10_adjunction_and_window():
    _report(10, criterion_adjunction_window())
