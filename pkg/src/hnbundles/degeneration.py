"""Degeneration engine: the constructive route to the codimension inequality.

For a reduced triple (E, F, Q) the engine builds a finite chain
E = E_0, E_1, ..., E_r = Q:

* E_1 peels one trivial summand O off E (possible since mu_max(E) = 0 and
  rank(Q) = rank(E) - 1), after which every chain member has rank(Q);
* each later step decomposes the duals of the current member and of Q into
  a shared HN polygon prefix M plus complements S (member side) and R
  (Q side), flattens the part of S above mu_max(R) down to mu_max(R)
  (the maximal slope reduction), and dualizes back.

The codimension c_value(E_i, F, Q) never increases along the chain, ends
at exactly 0, and drops strictly within the first two steps, which forces
c_value(E, F, Q) > 0.  The trace records every intermediate bundle, every
(M, R, S) decomposition, and every codimension so the harness can assert
each structural invariant per step.

A triple qualifies as *reduced* when seven individually named conditions
hold; ``normalize_triple`` turns any triple satisfying the five *general*
conditions into a reduced one by vertically stretching away denominators,
twisting the top slope of E to 0, and peeling trivial summands, recording
a transcript that ties the transformed codimension back to the original.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .bundle import (
    HNBundle,
    InternalConsistencyError,
    PreconditionError,
    canonicalize,
    format_bundle,
    summand_difference,
)
from .criteria import hn_common_prefix, slopewise_dominates
from .degrees import c_value

__all__ = [
    "DecompositionTriple",
    "DegenerationTrace",
    "NormalizationStep",
    "NormalizedTriple",
    "general_violations",
    "reduced_violations",
    "max_slope_reduction",
    "build_e1",
    "decompose_mrs",
    "degeneration_step",
    "degeneration_trace",
    "normalize_triple",
]


@dataclass(frozen=True)
class DecompositionTriple:
    """Shared prefix and complements of dual(Q) and dual(E_i).

    dual(Q) = common + q_complement and dual(E_i) = common + e_complement.
    The e_complement (S) slopewise dominates the q_complement (R); when S
    is nonzero, mu_max(S) > mu_max(R); when additionally the common part M
    is nonzero, mu_min(M) >= mu_max(S).
    """

    common: HNBundle
    q_complement: HNBundle
    e_complement: HNBundle

    def to_json_dict(self) -> dict:
        return {
            "M": format_bundle(self.common),
            "R": format_bundle(self.q_complement),
            "S": format_bundle(self.e_complement),
        }


@dataclass(frozen=True)
class DegenerationTrace:
    """Full record of one degenerating chain.

    ``chain[0]`` is E, ``chain[terminated_at]`` is Q, and every member from
    index 1 on has rank(Q).  ``steps[i-1]`` is the (M, R, S) decomposition
    of (chain[i], Q) for 1 <= i <= terminated_at; ``c_values[i]`` is the
    codimension of the Q-stratum for (chain[i], F, Q).
    """

    chain: tuple[HNBundle, ...]
    steps: tuple[DecompositionTriple, ...]
    c_values: tuple[int, ...]
    terminated_at: int

    def to_json_dict(self) -> dict:
        return {
            "chain": [format_bundle(v) for v in self.chain],
            "c": list(self.c_values),
            "steps": [step.to_json_dict() for step in self.steps],
        }


# ----------------------------------------------------------------------
# named admissibility conditions

def general_violations(e: HNBundle, f: HNBundle, q: HNBundle) -> tuple[tuple[str, str], ...]:
    """Violated conditions among the five general ones, as (name, text) pairs."""
    bad: list[tuple[str, str]] = []
    if not slopewise_dominates(f, e):
        bad.append(("(i)", "F must slopewise dominate E"))
    if not slopewise_dominates(e.dual(), q.dual()):
        bad.append(("(ii)", "dual(E) must slopewise dominate dual(Q)"))
    if not slopewise_dominates(f, q):
        bad.append(("(iii)", "F must slopewise dominate Q"))
    if set(e.slopes()) & set(f.slopes()):
        bad.append(("(iv)", "E and F must have no common slopes"))
    if not q.rank < e.rank:
        bad.append(("(v)", "rank(Q) must be smaller than rank(E)"))
    return tuple(bad)


def reduced_violations(e: HNBundle, f: HNBundle, q: HNBundle) -> tuple[tuple[str, str], ...]:
    """Violated conditions among the seven reduced ones, as (name, text) pairs."""
    bad = [v for v in general_violations(e, f, q) if v[0] != "(v)"]
    if q.rank != e.rank - 1:
        bad.append(("(v)", "rank(Q) must equal rank(E) - 1"))
    if not (e.has_integer_slopes() and f.has_integer_slopes() and q.has_integer_slopes()):
        bad.append(("(vi)", "all slopes of E, F and Q must be integers"))
    if e.is_zero or e.mu_max != 0:
        bad.append(("(vii)", "mu_max(E) must be 0"))
    bad.sort()
    return tuple(bad)


def _require(violations: tuple[tuple[str, str], ...]) -> None:
    if violations:
        name, text = violations[0]
        raise PreconditionError(f"condition {name} violated: {text}", condition=name)


# ----------------------------------------------------------------------
# elementary moves

def max_slope_reduction(v: HNBundle, w: HNBundle) -> HNBundle:
    """Flatten every slope of v above mu_max(w) down to mu_max(w).

    Requires v, w nonzero with integer slopes and v slopewise dominating w.
    Rank is preserved, the result still dominates w, and the result equals
    v exactly when mu_max(v) = mu_max(w).
    """
    if v.is_zero or w.is_zero:
        raise PreconditionError("maximal slope reduction requires nonzero bundles")
    if not (v.has_integer_slopes() and w.has_integer_slopes()):
        raise PreconditionError("maximal slope reduction requires integer slopes")
    if not slopewise_dominates(v, w):
        raise PreconditionError(f"{v} does not slopewise dominate {w}")
    top = w.mu_max
    flattened = v.filter(top, ">").rank
    return canonicalize(((top, flattened),) + v.filter(top, "<=").summands)


def build_e1(e: HNBundle) -> HNBundle:
    """Remove one copy of the trivial summand O; requires mu_max(e) = 0.

    Which copy is immaterial: the bundle is a canonical multiset, so there
    is exactly one result.
    """
    if e.is_zero or e.mu_max != 0:
        raise PreconditionError("peeling requires mu_max(E) = 0 (a trivial summand present)")
    return summand_difference(e, canonicalize([(Fraction(0), 1)]))


def decompose_mrs(e_i: HNBundle, q: HNBundle) -> DecompositionTriple:
    """Split dual(q) and dual(e_i) along their common HN polygon prefix.

    Requires rank(e_i) = rank(q) and dual(e_i) slopewise dominating
    dual(q).  When e_i differs from q, both complements are nonzero.
    """
    if e_i.rank != q.rank:
        raise PreconditionError(f"rank mismatch: rank({e_i}) != rank({q})")
    q_dual = q.dual()
    e_dual = e_i.dual()
    if not slopewise_dominates(e_dual, q_dual):
        raise PreconditionError(f"dual({e_i}) does not slopewise dominate dual({q})")
    common = hn_common_prefix(q_dual, e_dual)
    triple = DecompositionTriple(
        common,
        summand_difference(q_dual, common),
        summand_difference(e_dual, common),
    )
    if e_i != q and (triple.q_complement.is_zero or triple.e_complement.is_zero):
        raise InternalConsistencyError(
            f"distinct bundles {e_i}, {q} produced an empty complement"
        )
    return triple


def degeneration_step(e_i: HNBundle, q: HNBundle) -> HNBundle:
    """One chain step: dual(M + max_slope_reduction(S, R)); fixes q."""
    if e_i == q:
        return q
    triple = decompose_mrs(e_i, q)
    reduced = max_slope_reduction(triple.e_complement, triple.q_complement)
    return triple.common.direct_sum(reduced).dual()


# ----------------------------------------------------------------------
# full pipeline

def degeneration_trace(e: HNBundle, f: HNBundle, q: HNBundle) -> DegenerationTrace:
    """Build the full chain from a reduced triple, with decompositions and codimensions.

    Raises a named :class:`PreconditionError` when any of the seven reduced
    conditions fails, and an :class:`InternalConsistencyError` if the chain
    fails to reach Q within rank(Q) + 2 steps (impossible for admissible
    input: the rank of the shared prefix grows strictly at every
    non-terminal step and is bounded by rank(Q)).
    """
    _require(reduced_violations(e, f, q))
    chain: list[HNBundle] = [e, build_e1(e)]
    while chain[-1] != q:
        if len(chain) - 1 >= q.rank + 2:
            raise InternalConsistencyError(
                f"chain for E={e}, F={f}, Q={q} exceeded {q.rank + 2} steps"
            )
        chain.append(degeneration_step(chain[-1], q))
    steps = tuple(decompose_mrs(member, q) for member in chain[1:])
    c_values = tuple(c_value(member, f, q) for member in chain)
    return DegenerationTrace(tuple(chain), steps, c_values, len(chain) - 1)


@dataclass(frozen=True)
class NormalizationStep:
    """One recorded transformation with the codimension after it.

    ``op`` is "stretch" (amount = the vertical factor C, codimension
    multiplied by C), "twist" (amount = the integer slope shift,
    codimension unchanged) or "peel" (amount = 1 rank removed from E;
    the codimension drops by deg(F)^{>=0} - deg(Q)^{>=0}).
    """

    op: str
    amount: int
    c_after: int

    def to_json_dict(self) -> dict:
        return {"op": self.op, "amount": self.amount, "c": self.c_after}


@dataclass(frozen=True)
class NormalizedTriple:
    e: HNBundle
    f: HNBundle
    q: HNBundle
    initial_c: int
    transcript: tuple[NormalizationStep, ...]


def normalize_triple(e: HNBundle, f: HNBundle, q: HNBundle) -> NormalizedTriple:
    """Reduce a triple satisfying the five general conditions to a reduced one.

    Pipeline: one vertical stretch by the least common denominator of all
    slopes (skipped when already integral), then alternately twist
    mu_max(E) to 0 and peel a trivial summand until rank(E) - rank(Q) = 1,
    then a final twist to restore mu_max(E) = 0.  Identity inputs produce
    an empty transcript.  Positivity of the final codimension implies
    positivity of the original one: stretches scale it by C >= 1, twists
    preserve it, and peels never increase it.
    """
    _require(general_violations(e, f, q))
    transcript: list[NormalizationStep] = []
    initial_c = c_value(e, f, q)

    denominators = [lam.denominator for v in (e, f, q) for lam in v.slopes()]
    factor = lcm(*denominators) if denominators else 1
    if factor > 1:
        e, f, q = (v.vertical_stretch(factor) for v in (e, f, q))
        transcript.append(NormalizationStep("stretch", factor, c_value(e, f, q)))

    def twist_to_zero() -> None:
        nonlocal e, f, q
        shift = -e.mu_max
        if shift:
            e, f, q = (v.twist(shift) for v in (e, f, q))
            transcript.append(NormalizationStep("twist", int(shift), c_value(e, f, q)))

    while e.rank - q.rank > 1:
        twist_to_zero()
        e = build_e1(e)
        transcript.append(NormalizationStep("peel", 1, c_value(e, f, q)))
    twist_to_zero()

    remaining = reduced_violations(e, f, q)
    if remaining:
        raise InternalConsistencyError(
            f"normalization left conditions {[name for name, _ in remaining]} unsatisfied"
        )
    return NormalizedTriple(e, f, q, initial_c, tuple(transcript))
