"""Acceptance suite: one test per criterion, exact arithmetic throughout.

Every assertion is at tolerance zero.  Run with ``pytest
tests/test_acceptance.py -v -s`` to see the per-criterion PASS lines and
timings on stdout.
"""

from __future__ import annotations

import json
import time

from hnbundles import (
    PAIR_UNIVERSE,
    TRIPLE_UNIVERSE,
    UniverseSpec,
    c_value,
    degeneration_trace,
    dim_hom,
    enumerate_bundles,
    format_bundle,
    parse_bundle,
    stable,
    stratum_dim,
    verify_degeneration,
    verify_equivalence,
    verify_invariance,
    verify_key_inequality,
    verify_oracles,
    verify_stratification_dimension,
)
from hnbundles.cli import run

B = parse_bundle

SAMPLED_PAIRS = UniverseSpec(max_rank=4, slope_min=-2, slope_max=2,
                             max_denominator=4, sample_limit=10_000, seed=1)
INVARIANCE = UniverseSpec(max_rank=4, slope_min=-2, slope_max=2,
                          max_denominator=2, sample_limit=1_000, seed=1)


def _conclude(number: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {number}] {status}: {detail}")
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_1_worked_codimension_is_zero():
    value = c_value(stable(0), B("1,-1"), stable(1))
    _conclude(1, value == 0, f"c(O, O(1)+O(-1), O(1)) = {value}, expected exactly 0")


def test_criterion_2_equivalence_exhaustive_and_sampled():
    started = time.perf_counter()
    exhaustive = verify_equivalence(PAIR_UNIVERSE)
    sampled = verify_equivalence(SAMPLED_PAIRS)
    elapsed = time.perf_counter() - started
    ok = (
        exhaustive.passed
        and sampled.passed
        and sampled.instances_checked == 10_000
        and elapsed < 30.0
    )
    _conclude(
        2,
        ok,
        f"{exhaustive.instances_checked} exhaustive + {sampled.instances_checked} sampled "
        f"pairs, {len(exhaustive.counterexamples) + len(sampled.counterexamples)} "
        f"counterexamples, {elapsed:.1f}s (budget 30s)",
    )


def test_criterion_3_key_inequality():
    report = verify_key_inequality(TRIPLE_UNIVERSE)
    ok = report.passed and report.elapsed < 60.0
    _conclude(
        3,
        ok,
        f"{report.instances_checked} admissible triples, "
        f"{len(report.counterexamples)} counterexamples, {report.elapsed:.1f}s (budget 60s)",
    )


def test_criterion_4_degeneration_suite():
    report = verify_degeneration(TRIPLE_UNIVERSE)
    trace = degeneration_trace(B("0,-2"), B("1,-1"), B("-1"))
    worked_ok = len(trace.chain) == 3 and trace.c_values == (2, 1, 0)
    ok = report.passed and worked_ok and report.elapsed < 60.0
    _conclude(
        4,
        ok,
        f"{report.instances_checked} reduced triples, "
        f"{len(report.counterexamples)} counterexamples, worked triple chain "
        f"{[format_bundle(v) for v in trace.chain]} c={list(trace.c_values)}, "
        f"{report.elapsed:.1f}s (budget 60s)",
    )


def test_criterion_5_oracle_equivalence():
    report = verify_oracles(PAIR_UNIVERSE)
    _conclude(
        5,
        report.passed,
        f"{report.instances_checked} pairs, {len(report.counterexamples)} mismatches, "
        f"{report.elapsed:.1f}s",
    )


def test_criterion_6_stratification_dimension():
    report = verify_stratification_dimension(PAIR_UNIVERSE)
    e, f = B("0,-2"), B("1,-1")
    examples_ok = dim_hom(e, f) == 5 and stratum_dim(e, f, B("-1")) == 3
    ok = report.passed and examples_ok
    _conclude(
        6,
        ok,
        f"{report.instances_checked} dominating pairs, "
        f"{len(report.counterexamples)} counterexamples; dim hom(O+O(-2), O(1)+O(-1)) = "
        f"{dim_hom(e, f)}, stratum at O(-1) = {stratum_dim(e, f, B('-1'))}, "
        f"{report.elapsed:.1f}s",
    )


def test_criterion_7_invariance_laws():
    report = verify_invariance(INVARIANCE)
    ok = report.passed and report.instances_checked == 1_000
    _conclude(
        7,
        ok,
        f"{report.instances_checked} random triples, "
        f"{len(report.counterexamples)} violations, {report.elapsed:.1f}s",
    )


def test_criterion_8_round_trip_and_cli_contract(capsys):
    bundles = list(enumerate_bundles(PAIR_UNIVERSE, include_zero=True))
    bad_round_trips = [v for v in bundles if parse_bundle(format_bundle(v)) != v]
    json_mismatch = [
        v for v in bundles
        if json.loads(json.dumps(format_bundle(v))) != format_bundle(v)
    ]

    matrix = [
        (["check-sub", "0:1", "1,-1"], 0),
        (["check-sub", "1", "0:1"], 1),
        (["check-dominate", "1,-1", "0,-2"], 0),
        (["check-dominate", "0:1", "1"], 1),
        (["check-quotient", "-1", "0,-2"], 0),
        (["check-quotient", "1:2", "1"], 1),
        (["c", "0,-2", "1,-1", "-1"], 0),
        (["dims", "0,-2", "1,-1"], 0),
        (["trace", "0,-2", "1,-1", "-1", "--format", "json"], 0),
        (["trace", "0,-1", "1,-1", "0:1"], 3),
        (["check-sub", "garbage", "1"], 2),
        (["verify", "--check", "equivalence", "--max-rank", "2",
          "--slope-min", "-1", "--slope-max", "1", "--max-den", "1"], 0),
    ]
    wrong = []
    for argv, expected in matrix:
        got = run(argv)
        if got != expected:
            wrong.append((argv, expected, got))
    capsys.readouterr()

    ok = not bad_round_trips and not json_mismatch and not wrong
    with capsys.disabled():
        _conclude(
            8,
            ok,
            f"{len(bundles)} bundles round-tripped, 12 CLI invocations matched "
            f"({len(wrong)} wrong: {wrong[:3]})",
        )
