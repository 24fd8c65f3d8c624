"""Lens space normalization and sphere-bundle embedding bounds.

A lens space L(p, q) with p >= 2 has a genus-1 Heegaard splitting whose
two sides are the 0/1 curve and the p/q curve.  Walking from 0/1 through
1/0 to a slope of L(p, q) in the Farey graph (or its even subgraph)
produces a trisected connect sum of n sphere bundles containing the lens
space, where n is one less than the number of edges walked.  The twisted
bound minimizes over all homeomorphism representatives in the full graph;
the untwisted bound does the same in the even subgraph, where every
summand split off is S2 x S2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .evenfarey import even_distance, even_trace
from .farey import (
    DEFAULT_MAX_NODES,
    LONGITUDE,
    MERIDIAN,
    NoPathWithinCap,
    PathKind,
    Slope,
    SlopePath,
    _mediant_trace,
    default_cap as _slope_cap,
    farey_distance,
    is_even_vertex,
)


@dataclass(frozen=True, slots=True)
class LensSpace:
    """L(p, q) with p >= 2 and 1 <= q < p coprime to p.

    p = 0 and p = 1 (the sphere and S1 x S2) are rejected: they are not
    lens spaces in the sense used here and the bound machinery needs
    distance >= 2 targets.
    """

    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"L({self.p}, {self.q}): need p >= 2")
        if not 1 <= self.q < self.p:
            raise ValueError(f"L({self.p}, {self.q}): need 1 <= q < p")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"L({self.p}, {self.q}) is not a lens space (gcd > 1)")

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"


class Exactness(str, Enum):
    CERTIFIED = "certified"  # exact for the cap-restricted search
    UPPER_BOUND = "upper_bound"  # witness from a parent trace; search gave up


@dataclass(frozen=True)
class BoundResult:
    """Summand-count bound with its witness walk.

    The walk always starts 0/1, 1/0, ... as the diagram construction
    requires, and n equals its edge count minus one.
    """

    n: int
    path: SlopePath
    representative: LensSpace
    exactness: Exactness

    def __post_init__(self):
        if self.n != self.path.edges - 1:
            raise ValueError("n must be one less than the walk's edge count")
        if self.path.vertices[0] != MERIDIAN or self.path.vertices[1] != LONGITUDE:
            raise ValueError("bound walks must start 0/1, 1/0")


def normalize(p: int, q: int) -> LensSpace:
    """Reduce q modulo p into (0, p) and validate the result."""
    if p < 2:
        raise ValueError(f"L({p}, {q}) is excluded; need p >= 2")
    qm = q % p
    if qm == 0 or math.gcd(p, qm) != 1:
        raise ValueError(f"L({p}, {q}) is not a lens space")
    return LensSpace(p, qm)


def equivalent_reps(lens: LensSpace) -> frozenset[LensSpace]:
    """All unoriented homeomorphism representatives {+-q^{+-1} mod p}."""
    p, q = lens.p, lens.q
    qinv = pow(q, -1, p)
    return frozenset(LensSpace(p, r) for r in (q, p - q, qinv, p - qinv))


def default_cap(lens: LensSpace) -> int:
    return _slope_cap(MERIDIAN, LONGITUDE, Slope(lens.p, lens.q))


def _root_walk(target: Slope, even: bool) -> SlopePath:
    """The parent-trace walk [0/1, 1/0, ..., target].

    For a lens representative the target has p > q >= 1, and every
    mediant ancestor of such a slope again has numerator >= denominator,
    so the trace bottoms out at 1/0 and the reversed walk starts with the
    standard 0/1, 1/0 prefix.
    """
    if even:
        vertices = list(reversed(even_trace(target).vertices))
        kind = PathKind.EVEN_FAREY
    else:
        vertices = list(reversed(_mediant_trace(target)))
        kind = PathKind.FAREY
    if vertices[1] != LONGITUDE:
        raise RuntimeError(f"trace of {target} does not route through 1/0")
    return SlopePath(tuple(vertices), kind)


def _prepend_meridian(path: SlopePath) -> SlopePath:
    return SlopePath((MERIDIAN,) + path.vertices, path.kind)


def _best_bound(
    lens: LensSpace, cap: int | None, even: bool, max_nodes: int
) -> BoundResult:
    cap = cap if cap is not None else default_cap(lens)
    best: BoundResult | None = None
    for rep in sorted(equivalent_reps(lens), key=lambda r: r.q):
        target = Slope(rep.p, rep.q)
        if even and not is_even_vertex(target):
            continue
        witness = _root_walk(target, even)
        tail = SlopePath(witness.vertices[1:], witness.kind)  # from 1/0
        search = even_distance if even else farey_distance
        try:
            d, path = search(LONGITUDE, target, cap, max_nodes=max_nodes, upper=tail)
            cand = BoundResult(d, _prepend_meridian(path), rep, Exactness.CERTIFIED)
        except NoPathWithinCap as exc:
            cand = BoundResult(
                exc.upper_bound, _prepend_meridian(exc.path), rep, Exactness.UPPER_BOUND
            )
        if best is None or cand.n < best.n:
            best = cand
        if best.n == 1:
            break
    if best is None:
        # Unreachable: p even makes every q' odd, p odd makes one of
        # q', p - q' even, so an even representative always exists.
        raise RuntimeError(f"no even representative for {lens}")
    return best


def twisted_bound(
    lens: LensSpace, cap: int | None = None, *, max_nodes: int = DEFAULT_MAX_NODES
) -> BoundResult:
    """Fewest twisted-bundle summands our walks realize for this lens space.

    Minimizes the walk length from 0/1 through 1/0 over all homeomorphism
    representatives; n >= 1 always since p >= 2 keeps the target at
    distance >= 2 from 0/1.
    """
    return _best_bound(lens, cap, even=False, max_nodes=max_nodes)


def untwisted_bound(
    lens: LensSpace, cap: int | None = None, *, max_nodes: int = DEFAULT_MAX_NODES
) -> BoundResult:
    """Like :func:`twisted_bound` but restricted to the even Farey graph.

    Every vertex of the witness walk is even, so the resulting connect
    sum is built from untwisted bundles only.  When the search gives up,
    the even parent trace still guarantees n <= p - 1.
    """
    return _best_bound(lens, cap, even=True, max_nodes=max_nodes)


@dataclass(frozen=True)
class TableRow:
    lens: LensSpace
    twisted: BoundResult
    untwisted: BoundResult


def prop_bound_table(
    p_max: int,
    cap: int | None = None,
    *,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> list[TableRow]:
    """Both bounds for every lens space with 2 <= p <= p_max.

    One row per homeomorphism class, keyed by the representative with the
    smallest q; rows are ordered by (p, q).
    """
    if p_max < 2:
        raise ValueError("p_max must be at least 2")
    rows = []
    for p in range(2, p_max + 1):
        for q in range(1, p):
            if math.gcd(p, q) != 1:
                continue
            lens = LensSpace(p, q)
            if min(r.q for r in equivalent_reps(lens)) != q:
                continue
            rows.append(
                TableRow(
                    lens,
                    twisted_bound(lens, cap, max_nodes=max_nodes),
                    untwisted_bound(lens, cap, max_nodes=max_nodes),
                )
            )
    return rows
