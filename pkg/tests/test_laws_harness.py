"""The law harness itself: manifest coverage, refusals, and planted defects."""

from __future__ import annotations

import pytest

from openarrows.grading import SizeError
from openarrows.laws import (
    CHECKER_LAWS,
    LAWS,
    MUTANTS,
    run_mutants,
    run_suite,
)


def test_manifest_covers_every_emittable_law():
    emitted = set()
    for laws in CHECKER_LAWS.values():
        emitted |= set(laws)
    assert emitted == set(LAWS)
    assert set(MUTANTS) == set(LAWS)


def test_reports_carry_known_ids_and_statuses():
    for r in run_suite("optic"):
        assert r.law in LAWS
        assert r.status in ("pass", "fail", "unknown")
        assert r.checked > 0


def test_every_mutant_fails_exactly_its_target():
    for result in run_mutants():
        assert result.failed == (result.target,), (
            f"mutant for {result.target} broke {result.failed}"
        )
        assert result.isolated


def test_suite_results_are_cached():
    a = run_suite("optic")
    assert run_suite("optic") is a


@pytest.mark.parametrize("suite", ["arrow", "bimodule", "graded", "optic"])
def test_oversized_suites_are_refused_with_estimates(suite):
    with pytest.raises(SizeError) as exc:
        run_suite(suite, size=5)
    assert "refus" in str(exc.value) or "cap" in str(exc.value)


def test_unknown_suite_is_rejected():
    with pytest.raises(ValueError):
        run_suite("nonsense")
