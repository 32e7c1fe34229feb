"""Boundary combinatorics of the wonderful compactification.

Strata are handled purely combinatorially: a stratum is named by a chart
and a type, its toric slice by coordinate vanishing patterns, and the
equivariant projection to the two flag varieties by the valuations the
first building argument takes on the radical roots.  No scheme objects
exist here; every statement reduces to value patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .apartment import (
    ApartmentPoint,
    BoundaryPoint,
    boundary_value,
    classify_stratum,
    pair,
)
from .bigcell import eval_exponent
from .rootsys import (
    ParabolicType,
    RootSystem,
    WeylElement,
    act_vector,
    all_types,
    coset_min_rep,
    full_type,
    identity_element,
    inverse,
    levi_and_radical_roots,
)
from .valued import INF, Val

# A boundary point read as a point of the partially compactified torus.
TorusBoundaryPoint = BoundaryPoint


class StratumError(ValueError):
    """Stratum preconditions violated (e.g. interior input to pi_tau)."""


@dataclass(frozen=True)
class StratumDescriptor:
    """Name of a group-orbit stratum: a type plus the chart naming which
    parabolic containing the torus realizes it."""

    rs: RootSystem
    tau: ParabolicType
    chart: WeylElement

    @property
    def is_closed_orbit(self) -> bool:
        return len(self.tau) == 0

    @property
    def is_open_stratum(self) -> bool:
        return len(self.tau) == self.rs.rank

    def levi_roots(self) -> tuple[tuple[int, ...], ...]:
        dec = levi_and_radical_roots(self.rs, self.tau)
        return tuple(act_vector(self.rs, self.chart, b) for b in dec.levi)

    def radical_roots(self) -> tuple[tuple[int, ...], ...]:
        dec = levi_and_radical_roots(self.rs, self.tau)
        return tuple(act_vector(self.rs, self.chart, b) for b in dec.radical)

    def report(self) -> str:
        """Structured single-line text record naming the stratum."""
        bits = self.tau.bits(self.rs.rank)
        word = ".".join(str(j) for j in self.chart.word) or "e"
        kind = (
            "closed-orbit"
            if self.is_closed_orbit
            else "open" if self.is_open_stratum else "boundary"
        )
        return f"stratum tau_bits={bits} chart={word} kind={kind}"


@dataclass(frozen=True)
class FlagPoint:
    """Chart coordinates of the flag-variety image: one finite valuation
    per radical root of the named parabolic."""

    rs: RootSystem
    tau: ParabolicType
    chart: WeylElement
    coords: tuple[tuple[int, Val], ...]  # (absolute root index, finite value)

    def __post_init__(self):
        if any(v.is_inf for _, v in self.coords):
            raise StratumError("flag coordinates must be finite")


def base_point(
    rs: RootSystem, tau: ParabolicType, chart: WeylElement | None = None
) -> TorusBoundaryPoint:
    """The distinguished torus-boundary representative of the stratum:
    coordinate valuation 0 on tau, +inf off tau."""
    if chart is None:
        chart = identity_element(rs)
    vals = tuple(Val(0) if i in tau.indices else INF for i in range(rs.rank))
    return BoundaryPoint(rs, vals, chart)


def lambda_for_type(rs: RootSystem, tau: ParabolicType) -> tuple[int, ...]:
    """The cocharacter pairing to 0 on tau and 1 off tau; its limit is the
    stratum's base point."""
    return tuple(0 if i in tau.indices else 1 for i in range(rs.rank))


def one_ps_limit(
    rs: RootSystem,
    pairings: Sequence[int],
    chart: WeylElement | None = None,
) -> TorusBoundaryPoint:
    """Limit point of a one-parameter subgroup given by its simple-root
    pairings: the strictly pushed coordinates degenerate to +inf.

    The limit exists in the partially compactified torus iff every pairing
    is nonnegative; the zero cocharacter gives the interior base point and
    a regular one the closed-orbit point.
    """
    if chart is None:
        chart = identity_element(rs)
    pairings = [int(v) for v in pairings]
    if len(pairings) != rs.rank:
        raise StratumError("pairing vector length does not match the rank")
    if any(v < 0 for v in pairings):
        raise StratumError("limit does not exist: negative simple-root pairing")
    vals = tuple(INF if v > 0 else Val(0) for v in pairings)
    return BoundaryPoint(rs, vals, chart)


# ---------------------------------------------------------------------------
# Closure poset


@dataclass(frozen=True)
class ClosurePoset:
    """Stratum closure order, certified by two routes: the type-subset
    union and the boundary-divisor intersection (via coordinate vanishing
    sets of the base points)."""

    rs: RootSystem
    types: tuple[ParabolicType, ...]

    def vanishing_set(self, tau: ParabolicType) -> frozenset[int]:
        y = base_point(self.rs, tau)
        return frozenset(i for i, v in enumerate(y.vals) if v.is_inf)

    def in_closure_by_subset(self, inner: ParabolicType, outer: ParabolicType) -> bool:
        return inner.indices <= outer.indices

    def in_closure_by_divisors(self, inner: ParabolicType, outer: ParabolicType) -> bool:
        # closure(outer) = intersection of the divisors D_i, i off outer;
        # a stratum lies in D_i exactly when its -alpha_i coordinate vanishes
        return all(i in self.vanishing_set(inner) for i in self.divisor_indices(outer))

    def divisor_indices(self, tau: ParabolicType) -> frozenset[int]:
        return frozenset(range(self.rs.rank)) - tau.indices

    def le(self, inner: ParabolicType, outer: ParabolicType) -> bool:
        return self.in_closure_by_subset(inner, outer)

    def closure_of(self, tau: ParabolicType) -> list[ParabolicType]:
        return [t for t in self.types if self.le(t, tau)]

    @property
    def divisors(self) -> list[ParabolicType]:
        """The boundary divisors: the strata of types missing one root."""
        full = frozenset(range(self.rs.rank))
        return [ParabolicType(full - {i}) for i in range(self.rs.rank)]

    @property
    def stratum_count(self) -> int:
        return len(self.types)


def closure_poset(rs: RootSystem) -> ClosurePoset:
    """Build the closure poset and certify both characterizations agree."""
    poset = ClosurePoset(rs=rs, types=tuple(all_types(rs)))
    for a in poset.types:
        for b in poset.types:
            by_subset = poset.in_closure_by_subset(a, b)
            by_divisors = poset.in_closure_by_divisors(a, b)
            if by_subset != by_divisors:  # pragma: no cover - internal check
                raise StratumError(
                    f"closure characterizations disagree at {a} <= {b}"
                )
    return poset


def poset_dot(rs: RootSystem) -> str:
    """DOT text of the type poset: nodes are tau bitstrings, edges the
    covering relations, oriented small type -> large type."""
    types = all_types(rs)
    lines = ["digraph stratum_closure {", "  rankdir=BT;"]
    for tau in types:
        lines.append(f'  "{tau.bits(rs.rank)}";')
    for tau in types:
        for i in sorted(tau.indices):
            sub = ParabolicType(tau.indices - {i})
            lines.append(f'  "{sub.bits(rs.rank)}" -> "{tau.bits(rs.rank)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# The projection to the flag varieties and stratum membership


def project_pi_tau(
    x: ApartmentPoint, y: BoundaryPoint
) -> tuple[StratumDescriptor, FlagPoint]:
    """Project the seminorm pair to (parabolic name, flag coordinates).

    y must lie on a genuine boundary stratum.  The flag coordinates are
    the valuations of x at the radical roots of the named parabolic; they
    do not depend on y beyond its stratum and chart.
    """
    rs = x.rs
    tau = classify_stratum(y)
    if len(tau) == rs.rank:
        raise StratumError("pi_tau is undefined on the open stratum (interior y)")
    rep = coset_min_rep(rs, y.chart, tau)
    descriptor = StratumDescriptor(rs=rs, tau=tau, chart=rep)
    coords = []
    for beta in descriptor.radical_roots():
        coords.append((rs.index_of(beta), pair(x, beta)))
    coords.sort()
    flag = FlagPoint(rs=rs, tau=tau, chart=rep, coords=tuple(coords))
    return descriptor, flag


def stratum_membership(x: ApartmentPoint, y: BoundaryPoint) -> StratumDescriptor:
    """Classify the pair's stratum and double-check the seminorm values.

    The full coordinate pattern of the attached seminorm (character and
    xi values, computed through the evaluation formula) must vanish
    exactly where the stratum's defining conditions say; a mismatch would
    be an implementation bug and raises.
    """
    rs = x.rs
    w = y.chart
    winv = inverse(rs, w)
    tau = classify_stratum(y)
    dec = levi_and_radical_roots(rs, tau)
    empty = tuple(0 for _ in range(rs.rank))

    expected_vanishing = {
        rs.index_of(act_vector(rs, w, tuple(-c for c in b))) for b in dec.radical
    }

    # character pattern at the chart-negative roots
    seen_vanishing = set()
    for i in range(rs.n_pos):
        neg_abs = rs.index_of(act_vector(rs, w, rs.roots[i + rs.n_pos]))
        chi = rs.roots[neg_abs]
        value = boundary_value(y, chi) - pair(x, chi)
        if value.is_inf:
            seen_vanishing.add(neg_abs)
    if seen_vanishing != expected_vanishing:  # pragma: no cover - internal check
        raise StratumError("character vanishing pattern disagrees with the type")

    # xi pattern through the seminorm formula
    for idx in range(rs.n_roots):
        value = eval_exponent(x, y, empty, ((idx, 1),))
        chart_negative = not rs.is_positive_index(winv.perm[idx])
        should_vanish = chart_negative and idx in expected_vanishing
        if value.is_inf != should_vanish:  # pragma: no cover - internal check
            raise StratumError("xi vanishing pattern disagrees with the type")

    return StratumDescriptor(rs=rs, tau=tau, chart=coset_min_rep(rs, w, tau))
