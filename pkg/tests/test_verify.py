"""Enumeration and the verification harness itself."""

from __future__ import annotations

from fractions import Fraction

import pytest

from hnbundles import (
    UniverseSpec,
    ZERO,
    admissible_slopes,
    enumerate_bundles,
    enumerate_candidate_images,
    parse_bundle,
    run_checks,
    stable,
    verify_degeneration,
    verify_equivalence,
    verify_invariance,
    verify_key_inequality,
    verify_oracles,
    verify_stratification_dimension,
)

B = parse_bundle

TINY = UniverseSpec(max_rank=2, slope_min=-1, slope_max=1, max_denominator=1)
SMALL = UniverseSpec(max_rank=3, slope_min=-2, slope_max=2, max_denominator=2)
SMALL_INT = UniverseSpec(max_rank=3, slope_min=-2, slope_max=2, max_denominator=1)


def _count_by_rank(slopes, max_rank):
    """Independent universe count: DP over per-slope multiplicity choices."""
    counts = [1] + [0] * max_rank
    for lam in slopes:
        width = lam.denominator
        merged = [0] * (max_rank + 1)
        for base, ways in enumerate(counts):
            if not ways:
                continue
            total = base
            while total <= max_rank:
                merged[total] += ways
                total += width
        counts = merged
    return counts


# ----------------------------------------------------------------------
# universes

def test_universe_spec_validation():
    with pytest.raises(ValueError):
        UniverseSpec(max_rank=0)
    with pytest.raises(ValueError):
        UniverseSpec(slope_min=1, slope_max=0)
    with pytest.raises(ValueError):
        UniverseSpec(max_denominator=0)
    with pytest.raises(ValueError):
        UniverseSpec(sample_limit=0)
    with pytest.raises(ValueError):
        UniverseSpec(seed=-1)


def test_admissible_slopes():
    assert admissible_slopes(TINY) == (1, 0, -1)
    slopes = admissible_slopes(SMALL)
    assert Fraction(1, 2) in slopes and Fraction(-3, 2) in slopes
    assert Fraction(2, 2) not in set(slopes) - {Fraction(1)}  # no duplicates
    assert list(slopes) == sorted(slopes, reverse=True)


def test_enumerate_counts_against_dp_oracle():
    for spec in (TINY, SMALL, SMALL_INT):
        slopes = admissible_slopes(spec)
        expected = sum(_count_by_rank(slopes, spec.max_rank)[1:])
        bundles = list(enumerate_bundles(spec))
        assert len(bundles) == expected
        assert len(set(bundles)) == expected


def test_enumerate_tiny_example():
    assert len(list(enumerate_bundles(TINY))) == 9
    assert len(list(enumerate_bundles(TINY, include_zero=True))) == 10
    singleton = UniverseSpec(max_rank=1, slope_min=0, slope_max=0, max_denominator=1)
    assert list(enumerate_bundles(singleton)) == [stable(0)]


def test_enumerate_respects_bounds_and_is_deterministic():
    bundles = list(enumerate_bundles(SMALL))
    for v in bundles:
        assert 1 <= v.rank <= SMALL.max_rank
        for lam, _ in v.summands:
            assert SMALL.slope_min <= lam <= SMALL.slope_max
            assert lam.denominator <= SMALL.max_denominator
    assert bundles == list(enumerate_bundles(SMALL))
    half = stable(Fraction(1, 2))
    assert half in bundles and half.rank == 2


def test_candidate_images_example():
    e, f = stable(0), B("1,-1")
    candidates = set(enumerate_candidate_images(e, f, TINY))
    assert ZERO in candidates
    assert stable(0) in candidates
    assert stable(1) in candidates
    assert e in candidates
    for q in candidates:
        assert q.rank <= e.rank


def test_candidate_images_empty_universe_edge():
    narrow = UniverseSpec(max_rank=1, slope_min=0, slope_max=0, max_denominator=1)
    candidates = list(enumerate_candidate_images(B("1"), B("2"), narrow))
    assert candidates == [ZERO]  # the only universe member that qualifies


# ----------------------------------------------------------------------
# the checks themselves, desk scale kept small here

def test_verify_equivalence_passes():
    report = verify_equivalence(SMALL)
    assert report.passed
    assert report.instances_checked == (len(list(enumerate_bundles(SMALL))) + 1) ** 2


def test_verify_oracles_passes():
    assert verify_oracles(SMALL).passed


def test_verify_key_inequality_passes():
    report = verify_key_inequality(SMALL_INT)
    assert report.passed
    assert report.instances_checked > 0


def test_verify_degeneration_passes_without_findings():
    report = verify_degeneration(SMALL_INT)
    assert report.passed
    assert report.findings == ()
    assert report.instances_checked > 0


def test_verify_stratification_passes():
    assert verify_stratification_dimension(SMALL_INT).passed


def test_verify_invariance_passes():
    spec = UniverseSpec(max_rank=3, slope_min=-2, slope_max=2,
                        max_denominator=2, sample_limit=300, seed=9)
    report = verify_invariance(spec)
    assert report.passed
    assert report.instances_checked == 300


def test_reports_are_deterministic():
    spec = UniverseSpec(max_rank=2, slope_min=-2, slope_max=2,
                        max_denominator=2, sample_limit=500, seed=42)
    first = verify_equivalence(spec)
    second = verify_equivalence(spec)
    assert first.instances_checked == second.instances_checked
    assert first.counterexamples == second.counterexamples
    assert first.property_name == second.property_name


def test_sampling_draws_from_exhaustive_universe():
    spec = UniverseSpec(max_rank=2, slope_min=-1, slope_max=1,
                        max_denominator=1, sample_limit=50, seed=3)
    sampled = verify_key_inequality(spec)
    exhaustive = verify_key_inequality(UniverseSpec(
        max_rank=2, slope_min=-1, slope_max=1, max_denominator=1))
    assert sampled.instances_checked == min(50, exhaustive.instances_checked)
    assert sampled.passed and exhaustive.passed


def test_report_json_shape():
    payload = verify_equivalence(TINY).to_json_dict()
    assert set(payload) == {"property", "instances", "counterexamples",
                            "elapsed", "findings", "passed"}
    assert payload["passed"] is True
    assert payload["property"] == "equivalence"


def test_run_checks_selection_and_unknown():
    reports = run_checks(["equivalence", "oracles"], TINY)
    assert [r.property_name for r in reports] == ["equivalence", "oracles"]
    with pytest.raises(ValueError):
        run_checks(["nonsense"], TINY)


def test_run_checks_default_runs_everything():
    reports = run_checks(spec=TINY)
    assert [r.property_name for r in reports] == [
        "equivalence", "oracles", "key-inequality",
        "degeneration", "stratification", "invariance",
    ]
    assert all(r.passed for r in reports)


def test_counterexamples_would_be_replayable():
    # the report carries grammar strings; every bundle token in a
    # counterexample line must parse back (exercised here via findings-free
    # pass plus the formatting helper on a synthetic line)
    report = verify_equivalence(TINY)
    assert report.counterexamples == ()
    line = f"E={B('0,-2')} F={B('1,-1')}"
    fields = dict(part.split("=") for part in line.split())
    assert B(fields["E"]) == B("0,-2") and B(fields["F"]) == B("1,-1")
