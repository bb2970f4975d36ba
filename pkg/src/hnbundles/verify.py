"""Enumeration of bundle universes and machine checks of every claimed law.

A universe is the finite set of canonical bundles whose rank and slopes fit
inside a :class:`UniverseSpec`.  The harness enumerates universes
exhaustively (or samples instances with a seeded generator), evaluates both
sides of every stated equivalence or inequality, and reports counterexamples
as replayable grammar strings.  Identical specs always produce identical
reports; counterexample lists are sorted canonically.

Checks:

* equivalence     - the rank-filtration condition agrees with slopewise
                    dominance on every ordered pair;
* oracles         - the cross-product degree calculus agrees with the
                    tensor-expansion route on every ordered pair;
* key-inequality  - every admissible triple (five named conditions, with
                    rank(Q) < rank(E)) has strictly positive codimension;
* degeneration    - every reduced triple traces to Q within the step bound
                    with all per-step structural invariants intact;
* stratification  - the top stratum dimension over candidate images equals
                    the Hom-space dimension and is attained at Q = E;
* invariance      - vertical stretch scales codimensions by the factor and
                    integer twists preserve them, over random triples.

Candidate images are an over-approximation by design: only the necessary
conditions (quotient of E, subbundle of F) are checked, which cannot create
false failures because extra candidates can only carry smaller strata.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Iterator

from .bundle import HNBundle, InternalConsistencyError, PreconditionError, ZERO
from .criteria import rank_condition, slopewise_dominates
from .degeneration import DegenerationTrace, degeneration_trace
from .degrees import c_value, deg_nonneg, deg_nonneg_oracle, dim_hom, stratum_dim

__all__ = [
    "UniverseSpec",
    "PAIR_UNIVERSE",
    "TRIPLE_UNIVERSE",
    "VerificationReport",
    "admissible_slopes",
    "enumerate_bundles",
    "enumerate_candidate_images",
    "verify_equivalence",
    "verify_oracles",
    "verify_key_inequality",
    "verify_degeneration",
    "verify_stratification_dimension",
    "verify_invariance",
    "CHECKS",
    "run_checks",
]


@dataclass(frozen=True)
class UniverseSpec:
    """Bounds of a finite bundle universe plus sampling controls.

    Enumeration covers every canonical bundle with rank <= max_rank whose
    slopes lie in [slope_min, slope_max] with denominator <=
    max_denominator.  When ``sample_limit`` is set, verification runs check
    that many seeded random instances (for the total properties) or the
    first that many admissible instances (for the filtered ones) instead of
    the full product; sampled instances are always drawn from the
    exhaustive universe.
    """

    max_rank: int = 4
    slope_min: Fraction = Fraction(-2)
    slope_max: Fraction = Fraction(2)
    max_denominator: int = 2
    sample_limit: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "slope_min", Fraction(self.slope_min))
        object.__setattr__(self, "slope_max", Fraction(self.slope_max))
        if self.max_rank < 1:
            raise ValueError("max_rank must be >= 1")
        if self.max_denominator < 1:
            raise ValueError("max_denominator must be >= 1")
        if self.slope_min > self.slope_max:
            raise ValueError("slope_min must not exceed slope_max")
        if self.sample_limit is not None and self.sample_limit < 1:
            raise ValueError("sample_limit must be >= 1 when given")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


PAIR_UNIVERSE = UniverseSpec(max_rank=4, slope_min=Fraction(-2), slope_max=Fraction(2), max_denominator=2)
TRIPLE_UNIVERSE = UniverseSpec(max_rank=4, slope_min=Fraction(-3), slope_max=Fraction(3), max_denominator=1)


def admissible_slopes(spec: UniverseSpec) -> tuple[Fraction, ...]:
    """All reduced slopes inside the universe bounds, in descending order."""
    found: set[Fraction] = set()
    for q in range(1, spec.max_denominator + 1):
        for p in range(ceil(spec.slope_min * q), floor(spec.slope_max * q) + 1):
            lam = Fraction(p, q)
            if lam.denominator == q:
                found.add(lam)
    return tuple(sorted(found, reverse=True))


def enumerate_bundles(spec: UniverseSpec, include_zero: bool = False) -> Iterator[HNBundle]:
    """Every canonical bundle of the universe, once, in deterministic order.

    The stream is always exhaustive; ``sample_limit`` only affects how the
    verification runs draw instances from it.
    """
    slopes = admissible_slopes(spec)

    def rec(start: int, budget: int) -> Iterator[tuple[tuple[Fraction, int], ...]]:
        yield ()
        for idx in range(start, len(slopes)):
            width = slopes[idx].denominator
            if width > budget:
                continue
            for mult in range(1, budget // width + 1):
                head = ((slopes[idx], mult),)
                for tail in rec(idx + 1, budget - mult * width):
                    yield head + tail

    if include_zero:
        yield ZERO
    for combo in rec(0, spec.max_rank):
        if combo:
            yield HNBundle(combo)


def enumerate_candidate_images(e: HNBundle, f: HNBundle, spec: UniverseSpec) -> Iterator[HNBundle]:
    """Universe members satisfying the necessary conditions for a nonempty stratum.

    Yields every Q in the universe (zero included) that is a candidate
    image of a map e -> f: Q is a quotient of e (dual dominance) and a
    subbundle of f, forcing rank(Q) <= rank(e).  Necessary-only: candidacy
    does not certify that the stratum is nonempty.
    """
    pool = enumerate_bundles(spec, include_zero=True)
    yield from _candidates(e, f, pool)


def _candidates(e: HNBundle, f: HNBundle, pool: Iterable[HNBundle]) -> Iterator[HNBundle]:
    e_dual = e.dual()
    for q in pool:
        if q.rank <= e.rank and slopewise_dominates(e_dual, q.dual()) and slopewise_dominates(f, q):
            yield q


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one check; it passes exactly when no counterexamples exist.

    ``findings`` carries observations outside the claimed laws (currently
    only the dually-degenerating chain property); they never fail a run.
    """

    property_name: str
    instances_checked: int
    counterexamples: tuple[str, ...]
    elapsed: float
    findings: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"{status} {self.property_name}: {self.instances_checked} instances, "
            f"{len(self.counterexamples)} counterexamples, {self.elapsed:.2f}s"
        )
        if self.findings:
            line += f", {len(self.findings)} findings"
        return line

    def to_json_dict(self) -> dict:
        return {
            "property": self.property_name,
            "instances": self.instances_checked,
            "counterexamples": list(self.counterexamples),
            "elapsed": self.elapsed,
            "findings": list(self.findings),
            "passed": self.passed,
        }


def _report(name: str, count: int, cex: list[str], started: float,
            findings: list[str] | None = None) -> VerificationReport:
    return VerificationReport(
        name,
        count,
        tuple(sorted(cex)),
        time.perf_counter() - started,
        tuple(sorted(findings or [])),
    )


def _pair_stream(pool: list[HNBundle], spec: UniverseSpec) -> Iterator[tuple[HNBundle, HNBundle]]:
    if spec.sample_limit is None:
        yield from itertools.product(pool, repeat=2)
    else:
        rng = random.Random(spec.seed)
        for _ in range(spec.sample_limit):
            yield rng.choice(pool), rng.choice(pool)


def verify_equivalence(spec: UniverseSpec) -> VerificationReport:
    """rank_condition(E, F) agrees with slopewise_dominates(F, E) on all pairs."""
    started = time.perf_counter()
    pool = list(enumerate_bundles(spec, include_zero=True))
    cex: list[str] = []
    count = 0
    for e, f in _pair_stream(pool, spec):
        count += 1
        by_ranks = rank_condition(e, f)
        by_slopes = slopewise_dominates(f, e)
        if by_ranks != by_slopes:
            cex.append(f"E={e} F={f}: rank_condition={by_ranks} slopewise_dominates={by_slopes}")
    return _report("equivalence", count, cex, started)


def verify_oracles(spec: UniverseSpec) -> VerificationReport:
    """Cross-product degree calculus agrees with the tensor route on all pairs."""
    started = time.perf_counter()
    pool = list(enumerate_bundles(spec, include_zero=True))
    cex: list[str] = []
    count = 0
    for v, w in _pair_stream(pool, spec):
        count += 1
        fast = deg_nonneg(v, w)
        slow = deg_nonneg_oracle(v, w)
        if fast != slow:
            cex.append(f"V={v} W={w}: cross-product={fast} tensor-route={slow}")
    return _report("oracles", count, cex, started)


def _admissible_triples(
    spec: UniverseSpec, equal_rank_gap: bool
) -> Iterator[tuple[HNBundle, HNBundle, HNBundle]]:
    """Triples meeting the five general conditions; optionally the reduced seven.

    With ``equal_rank_gap`` the stream is restricted to rank(Q) =
    rank(E) - 1, integer slopes, and mu_max(E) = 0.
    """
    bundles = list(enumerate_bundles(spec))
    duals = {b: b.dual() for b in bundles}
    duals[ZERO] = ZERO
    by_rank: dict[int, list[HNBundle]] = {0: [ZERO]}
    for b in bundles:
        by_rank.setdefault(b.rank, []).append(b)

    for e in bundles:
        if equal_rank_gap and (e.mu_max != 0 or not e.has_integer_slopes()):
            continue
        e_slopes = set(e.slopes())
        e_dual = duals[e]
        q_ranks = [e.rank - 1] if equal_rank_gap else list(range(e.rank))
        for f in bundles:
            if e_slopes & set(f.slopes()):
                continue
            if equal_rank_gap and not f.has_integer_slopes():
                continue
            if not slopewise_dominates(f, e):
                continue
            for r in q_ranks:
                for q in by_rank.get(r, ()):
                    if equal_rank_gap and not q.has_integer_slopes():
                        continue
                    if not slopewise_dominates(e_dual, duals[q]):
                        continue
                    if not slopewise_dominates(f, q):
                        continue
                    yield e, f, q


def verify_key_inequality(spec: UniverseSpec) -> VerificationReport:
    """c_value > 0 on every triple satisfying the five general conditions."""
    started = time.perf_counter()
    stream = _admissible_triples(spec, equal_rank_gap=False)
    if spec.sample_limit is not None:
        stream = itertools.islice(stream, spec.sample_limit)
    cex: list[str] = []
    count = 0
    for e, f, q in stream:
        count += 1
        c = c_value(e, f, q)
        if c <= 0:
            cex.append(f"E={e} F={f} Q={q}: c={c}")
    return _report("key-inequality", count, cex, started)


def _trace_problems(
    e: HNBundle, f: HNBundle, q: HNBundle, trace: DegenerationTrace
) -> tuple[list[str], list[str]]:
    """Re-check every claimed chain invariant; returns (violations, findings)."""
    bad: list[str] = []
    notes: list[str] = []
    chain, steps, c = trace.chain, trace.steps, trace.c_values
    r = trace.terminated_at

    if chain[0] != e or chain[-1] != q:
        bad.append("chain endpoints wrong")
    if r != len(chain) - 1 or len(steps) != r or len(c) != r + 1:
        bad.append("trace lengths inconsistent")
    if r > q.rank + 2:
        bad.append(f"chain length {r} exceeds rank bound {q.rank + 2}")
    if any(member.rank != q.rank for member in chain[1:]):
        bad.append("rank plateau broken")
    if any(c[i] != c_value(chain[i], f, q) for i in range(len(chain))):
        bad.append("recorded codimensions disagree with recomputation")
    if any(c[i] < c[i + 1] for i in range(len(c) - 1)):
        bad.append(f"codimension increased along the chain: {list(c)}")
    if c[-1] != 0:
        bad.append(f"endpoint codimension {c[-1]} != 0")
    if r >= 2 and not c[0] > c[2]:
        bad.append(f"no strict drop across the first two steps: {list(c)}")
    if c[0] <= 0:
        bad.append(f"initial codimension {c[0]} not positive")

    first_drop = f.filter(0, ">=").degree - q.filter(0, ">=").degree
    if c[0] - c[1] != first_drop:
        bad.append(f"first-step drop {c[0] - c[1]} != deg(F)>=0 - deg(Q)>=0 = {first_drop}")

    q_dual = q.dual()
    for i in range(1, r + 1):
        member = chain[i]
        m, rr, s = steps[i - 1].common, steps[i - 1].q_complement, steps[i - 1].e_complement
        label = f"step {i}"
        if m.direct_sum(rr) != q_dual or m.direct_sum(s) != member.dual():
            bad.append(f"{label}: decomposition does not reassemble the duals")
            continue
        if not slopewise_dominates(s, rr):
            bad.append(f"{label}: S={s} does not dominate R={rr}")
        if s.is_zero != rr.is_zero or s.is_zero != (member == q):
            bad.append(f"{label}: complement vanishing inconsistent")
        if not s.is_zero and not s.mu_max > rr.mu_max:
            bad.append(f"{label}: mu_max(S) <= mu_max(R)")
        if not m.is_zero and not s.is_zero and not m.mu_min >= s.mu_max:
            bad.append(f"{label}: mu_min(M) < mu_max(S)")

    for i in range(1, r):
        if c[i] == c[i + 1] and chain[i] != q:
            s_dual = steps[i - 1].e_complement.dual()
            if s_dual.rank != f.filter(s_dual.mu_min, ">").rank:
                bad.append(f"step {i}: codimension stalled without the rank equality")

    for i in range(r):
        if not slopewise_dominates(chain[i].dual(), chain[i + 1].dual()):
            notes.append(f"dual chain not degenerating at step {i}")
    return bad, notes


def verify_degeneration(spec: UniverseSpec) -> VerificationReport:
    """Trace every reduced triple and re-check all chain invariants."""
    started = time.perf_counter()
    stream = _admissible_triples(spec, equal_rank_gap=True)
    if spec.sample_limit is not None:
        stream = itertools.islice(stream, spec.sample_limit)
    cex: list[str] = []
    findings: list[str] = []
    count = 0
    for e, f, q in stream:
        count += 1
        prefix = f"E={e} F={f} Q={q}"
        try:
            trace = degeneration_trace(e, f, q)
        except (PreconditionError, InternalConsistencyError) as exc:
            cex.append(f"{prefix}: trace failed: {exc}")
            continue
        bad, notes = _trace_problems(e, f, q, trace)
        cex.extend(f"{prefix}: {item}" for item in bad)
        findings.extend(f"{prefix}: {item}" for item in notes)
    return _report("degeneration", count, cex, started, findings)


def verify_stratification_dimension(spec: UniverseSpec) -> VerificationReport:
    """Top stratum over candidate images equals dim hom, attained at Q = E.

    For every pair with no common slopes where F dominates E: the stratum
    at Q = E has the full Hom dimension, no candidate exceeds it, and
    (the key inequality in its stratum form) no candidate of strictly
    smaller rank attains it.
    """
    started = time.perf_counter()
    pool = list(enumerate_bundles(spec, include_zero=True))
    cex: list[str] = []
    count = 0
    for e in pool:
        e_slopes = set(e.slopes())
        for f in pool:
            if e_slopes & set(f.slopes()):
                continue
            if not slopewise_dominates(f, e):
                continue
            count += 1
            prefix = f"E={e} F={f}"
            full = dim_hom(e, f)
            best = None
            for q in _candidates(e, f, pool):
                try:
                    dim = stratum_dim(e, f, q)
                except InternalConsistencyError as exc:
                    cex.append(f"{prefix} Q={q}: {exc}")
                    continue
                best = dim if best is None else max(best, dim)
                if q == e and dim != full:
                    cex.append(f"{prefix}: stratum at Q=E is {dim}, dim hom is {full}")
                if q.rank < e.rank and dim >= full:
                    cex.append(f"{prefix} Q={q}: smaller-rank stratum {dim} reaches dim hom {full}")
            if best != full:
                cex.append(f"{prefix}: top stratum {best} != dim hom {full}")
    return _report("stratification", count, cex, started)


def verify_invariance(spec: UniverseSpec) -> VerificationReport:
    """Stretch scales degrees and codimensions by C; integer twists fix them."""
    started = time.perf_counter()
    pool = list(enumerate_bundles(spec, include_zero=True))
    rng = random.Random(spec.seed)
    trials = spec.sample_limit if spec.sample_limit is not None else 1000
    cex: list[str] = []
    for _ in range(trials):
        e, f, q = (rng.choice(pool) for _ in range(3))
        factor = rng.randint(1, 3)
        shift = rng.randint(-3, 3)
        prefix = f"E={e} F={f} Q={q}"
        base_pair = deg_nonneg(e, f)
        base_c = c_value(e, f, q)
        se, sf, sq = (v.vertical_stretch(factor) for v in (e, f, q))
        te, tf, tq = (v.twist(shift) for v in (e, f, q))
        if deg_nonneg(se, sf) != factor * base_pair:
            cex.append(f"{prefix}: stretch by {factor} broke the degree scaling")
        if deg_nonneg(te, tf) != base_pair:
            cex.append(f"{prefix}: twist by {shift} moved the degree")
        if c_value(se, sf, sq) != factor * base_c:
            cex.append(f"{prefix}: stretch by {factor} broke the codimension scaling")
        if c_value(te, tf, tq) != base_c:
            cex.append(f"{prefix}: twist by {shift} moved the codimension")
    return _report("invariance", trials, cex, started)


# name -> (runner, desk-scale default spec)
CHECKS: dict[str, tuple] = {
    "equivalence": (verify_equivalence, PAIR_UNIVERSE),
    "oracles": (verify_oracles, PAIR_UNIVERSE),
    "key-inequality": (verify_key_inequality, TRIPLE_UNIVERSE),
    "degeneration": (verify_degeneration, TRIPLE_UNIVERSE),
    "stratification": (verify_stratification_dimension, PAIR_UNIVERSE),
    "invariance": (verify_invariance, PAIR_UNIVERSE),
}


def run_checks(names: Iterable[str] | None = None,
               spec: UniverseSpec | None = None) -> list[VerificationReport]:
    """Run the named checks (all by default) on ``spec`` or desk-scale defaults."""
    selected = list(names) if names is not None else list(CHECKS)
    reports = []
    for name in selected:
        try:
            runner, default_spec = CHECKS[name]
        except KeyError:
            raise ValueError(f"unknown check {name!r}; options: {', '.join(CHECKS)}")
        reports.append(runner(spec if spec is not None else default_spec))
    return reports
