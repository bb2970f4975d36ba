"""Decision procedures for subbundles, quotients, and slopewise dominance.

Two equivalent tests decide whether E embeds into F as a subbundle:

* rank condition: rank(E^{>=mu}) <= rank(F^{>=mu}) for every rational mu;
* slopewise dominance: on each unit interval [i-1, i] with i <= rank(E),
  the HN polygon of E has slope <= that of F.

Both are implemented independently; their equivalence over entire bundle
universes is one of the harness's flagship exhaustive checks.  Quotients
are decided by the dual criterion.

Conventions for degenerate inputs (the classification lives on nonzero
bundles; these are the unique extensions consistent with the rank
condition): the zero bundle is a subbundle and a quotient of everything,
nothing nonzero is dominated by the zero bundle, and dominance is false
whenever rank(E) > rank(F).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bundle import HNBundle, PreconditionError, summand_difference

__all__ = [
    "rank_condition",
    "slopewise_dominates",
    "is_subbundle",
    "is_quotient",
    "strip_common_slopes",
    "hn_common_prefix",
    "CommonFactorDecomposition",
    "max_common_factor",
]


def rank_condition(e: HNBundle, f: HNBundle) -> bool:
    """rank(e^{>=mu}) <= rank(f^{>=mu}) for every rational mu.

    rank(V^{>=mu}) is a step function of mu jumping only at slopes of V, so
    checking at the slopes occurring in either bundle plus one probe below
    both minima decides the condition for all mu.
    """
    probes = set(e.slopes()) | set(f.slopes())
    if probes:
        probes.add(min(probes) - 1)
    for mu in probes:
        if e.filter(mu, ">=").rank > f.filter(mu, ">=").rank:
            return False
    return True


@lru_cache(maxsize=None)
def slopewise_dominates(f: HNBundle, e: HNBundle) -> bool:
    """True when the HN polygon of f runs above that of e on [0, rank(e)]."""
    if e.is_zero:
        return True
    if e.rank > f.rank:
        return False
    return all(a <= b for a, b in zip(e.unit_slopes, f.unit_slopes))


def is_subbundle(e: HNBundle, f: HNBundle) -> bool:
    """Whether e embeds into f as a subbundle (image a direct summand locally)."""
    return slopewise_dominates(f, e)


def is_quotient(q: HNBundle, e: HNBundle) -> bool:
    """Whether q arises as a quotient bundle of e; decided on the duals."""
    return slopewise_dominates(e.dual(), q.dual())


def strip_common_slopes(e: HNBundle, f: HNBundle) -> tuple[HNBundle, HNBundle, HNBundle]:
    """Split off the maximal common direct summand supported on shared slopes.

    Returns (U, E', F') with e = U + E', f = U + F', where U takes the
    slopewise minimum of the multiplicities of the shared slopes; E' and F'
    share no slope, and the subbundle criterion holds for (e, f) exactly
    when it holds for (E', F').
    """
    shared = set(e.slopes()) & set(f.slopes())
    common = HNBundle(
        tuple(
            (lam, min(e.multiplicity(lam), f.multiplicity(lam)))
            for lam in sorted(shared, reverse=True)
        )
    )
    return common, summand_difference(e, common), summand_difference(f, common)


def hn_common_prefix(a: HNBundle, b: HNBundle) -> HNBundle:
    """Largest initial portion shared by the HN polygons of a and b.

    Leading (slope, multiplicity) pairs are consumed while they agree; at
    the first pair where the slopes agree but the multiplicities differ,
    the smaller multiplicity still belongs to the shared portion.  The
    prefix is unique, so no tie-breaking arises.
    """
    shared: list[tuple] = []
    for (sa, ma), (sb, mb) in zip(a.summands, b.summands):
        if sa != sb:
            break
        shared.append((sa, min(ma, mb)))
        if ma != mb:
            break
    return HNBundle(tuple(shared))


@dataclass(frozen=True)
class CommonFactorDecomposition:
    """e = common + e_complement and f = common + f_complement.

    When f slopewise dominates e: f_complement dominates e_complement; if
    e_complement is nonzero, mu_max(f_complement) > mu_max(e_complement);
    and if additionally common is nonzero, mu_min(common) >=
    mu_max(f_complement).
    """

    common: HNBundle
    e_complement: HNBundle
    f_complement: HNBundle


def max_common_factor(e: HNBundle, f: HNBundle) -> CommonFactorDecomposition:
    """Peel the common HN polygon prefix off a dominating pair.

    Requires f to slopewise dominate e.  The common factor is the largest
    bundle whose polygon is an initial run of both polygons.
    """
    if not slopewise_dominates(f, e):
        raise PreconditionError(f"{f} does not slopewise dominate {e}")
    common = hn_common_prefix(e, f)
    return CommonFactorDecomposition(
        common, summand_difference(e, common), summand_difference(f, common)
    )
