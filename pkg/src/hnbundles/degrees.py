"""Exact dimension calculus for spaces of bundle maps.

Everything here reduces to one number: ``deg_nonneg(V, W)``, the degree of
the nonnegative-slope part of Hom(V, W) = dual(V) (x) W.  It is computed
without forming the tensor product: writing the HN polygons of V and W as
sequences of integer segment vectors, each pair (v, w) with
slope(v) <= slope(w) contributes the two-dimensional cross product
``v x w``, and those contributions sum to the degree.  The value is a
nonnegative integer and vanishes whenever mu_min(V) >= mu_max(W).

``deg_nonneg_oracle`` recomputes the same number along the direct route
(expand the tensor product into stable summands, keep slopes >= 0, take the
degree).  The two routes are kept independent on purpose; the verification
harness checks them against each other over entire universes.

Derived quantities:

* ``dim_hom(E, F)``   = deg_nonneg(E, F), the dimension of the space of
  maps E -> F.
* ``stratum_dim(E, F, Q)`` = dimension of the locus of maps whose image is
  Q, when that locus is nonempty:
  deg_nonneg(E, Q) + deg_nonneg(Q, F) - deg_nonneg(Q, Q).
* ``c_value(E, F, Q)`` = dim_hom(E, F) - stratum_dim(E, F, Q), the
  codimension of the Q-stratum.  It is total in all three arguments so the
  harness can probe boundary behavior.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bundle import HNBundle, InternalConsistencyError

__all__ = [
    "deg_nonneg",
    "deg_nonneg_oracle",
    "dim_hom",
    "stratum_dim",
    "c_value",
    "StratumReport",
    "stratum_report",
]


@lru_cache(maxsize=None)
def deg_nonneg(v: HNBundle, w: HNBundle) -> int:
    """Degree of the slope->=0 part of Hom(v, w), by segment cross products."""
    total = 0
    for a in v.segment_vectors:
        for b in w.segment_vectors:
            if a.slope <= b.slope:
                total += a.cross(b)
    return total


def deg_nonneg_oracle(v: HNBundle, w: HNBundle) -> int:
    """Same value as :func:`deg_nonneg` via tensor expansion; oracle route only."""
    return v.dual().tensor(w).filter(0, ">=").degree


def dim_hom(e: HNBundle, f: HNBundle) -> int:
    """Dimension of the space of bundle maps e -> f."""
    return deg_nonneg(e, f)


def stratum_dim(e: HNBundle, f: HNBundle, q: HNBundle) -> int:
    """Dimension of the stratum of maps e -> f with image q.

    Pure arithmetic in all three arguments; the caller decides whether the
    stratum is nonempty (see the criteria module).  A negative value cannot
    arise for an admissible q and is reported as an internal error.
    """
    value = deg_nonneg(e, q) + deg_nonneg(q, f) - deg_nonneg(q, q)
    if value < 0:
        raise InternalConsistencyError(
            f"stratum dimension formula gave {value} < 0 for E={e}, F={f}, Q={q}"
        )
    return value


def c_value(e: HNBundle, f: HNBundle, q: HNBundle) -> int:
    """Codimension of the q-stratum inside Hom(e, f); total in all arguments."""
    return (
        deg_nonneg(e, f)
        + deg_nonneg(q, q)
        - deg_nonneg(e, q)
        - deg_nonneg(q, f)
    )


@dataclass(frozen=True)
class StratumReport:
    """One candidate image with its stratum dimension and codimension."""

    image: HNBundle
    stratum_dimension: int
    c_value: int


def stratum_report(e: HNBundle, f: HNBundle, q: HNBundle) -> StratumReport:
    """Build a consistent report; c_value == dim_hom - stratum_dimension."""
    return StratumReport(q, stratum_dim(e, f, q), c_value(e, f, q))
