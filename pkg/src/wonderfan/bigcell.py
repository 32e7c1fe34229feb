"""Exact coordinate-ring elements and the relative-position seminorm.

A cell polynomial is a finite sum of terms a·chi·xi^nu with exact
coefficients in a valued field: chi is a character (integer vector over
the simple-root basis), nu a multiplicity vector over the roots.  The
"laurent" ring allows any chi; the "monoid" ring is the partially
compactified cell, whose characters are nonnegative combinations of the
negative simple roots (all chi entries <= 0 in our basis).

The seminorm attached to a pair (x, y) - x interior, y possibly on the
boundary of y's chart - evaluates a polynomial to the minimum over its
terms of

    val(a) + val_y(chi) - val_x(chi)
           + sum over negative chart roots of nu(beta) val_y(beta)
           + sum over positive chart roots of nu(beta) val_x(beta),

all in valuation coordinates, +inf absorbing.  It is multiplicative and
ultrametric, and a norm whenever y has no vanishing coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .apartment import (
    ApartmentPoint,
    BoundaryPoint,
    ChartError,
    boundary_value,
    pair,
    shift_interior,
)
from .rootsys import RootSystem, WeylElement, act_vector, inverse
from .valued import INF, Val

LAURENT = "laurent"
MONOID = "monoid"


class RingFlagError(ValueError):
    """Ring-flag mismatch, or monoid exponents out of range."""


class SeminormDomainError(ValueError):
    """Evaluation outside the seminorm's domain (laurent vs. boundary)."""


Chi = tuple[int, ...]
Nu = tuple[tuple[int, int], ...]  # sorted (root index, multiplicity > 0)


def _normalize_nu(rs: RootSystem, nu) -> Nu:
    acc: dict[int, int] = {}
    items = nu.items() if isinstance(nu, Mapping) else nu
    for idx, mult in items:
        idx = int(idx)
        mult = int(mult)
        if not 0 <= idx < rs.n_roots:
            raise RingFlagError(f"no root with index {idx}")
        if mult < 0:
            raise RingFlagError("negative xi multiplicity")
        if mult:
            acc[idx] = acc.get(idx, 0) + mult
    return tuple(sorted(acc.items()))


@dataclass(frozen=True)
class CellPolynomial:
    """Element of the big-cell or partially-compactified-cell ring.

    Terms are canonical: exponent keys unique and sorted, no stored zero
    coefficients, monoid-flagged characters have no positive entry.
    """

    rs: RootSystem
    field: object
    flag: str
    terms: tuple[tuple[Chi, Nu, object], ...]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, chi: Chi, nu: Nu):
        for c, n, a in self.terms:
            if c == chi and n == nu:
                return a
        return None

    def __str__(self) -> str:
        return format_polynomial(self)


def cell_polynomial(
    rs: RootSystem,
    field,
    flag: str,
    terms: Iterable[tuple[Sequence[int], object, object]] | Mapping,
) -> CellPolynomial:
    """Build a polynomial from (chi, nu, coeff) triples or a {(chi,nu): coeff}
    map; zero coefficients are dropped and duplicate keys accumulated."""
    if flag not in (LAURENT, MONOID):
        raise RingFlagError(f"unknown ring flag {flag!r}")
    acc: dict[tuple[Chi, Nu], object] = {}
    if isinstance(terms, Mapping):
        items = [(chi, nu, coeff) for (chi, nu), coeff in terms.items()]
    else:
        items = list(terms)
    for chi, nu, coeff in items:
        chi = tuple(int(c) for c in chi)
        if len(chi) != rs.rank:
            raise RingFlagError("character vector length does not match the rank")
        if flag == MONOID and any(c > 0 for c in chi):
            raise RingFlagError(
                "monoid-ring character with a positive simple-root entry"
            )
        nu = _normalize_nu(rs, nu)
        key = (chi, nu)
        acc[key] = field.add(acc[key], coeff) if key in acc else coeff
    clean = tuple(
        (chi, nu, coeff)
        for (chi, nu), coeff in sorted(acc.items())
        if not field.is_zero(coeff)
    )
    return CellPolynomial(rs=rs, field=field, flag=flag, terms=clean)


def constant(rs: RootSystem, field, value, flag: str = MONOID) -> CellPolynomial:
    zero_chi = tuple(0 for _ in range(rs.rank))
    return cell_polynomial(rs, field, flag, [(zero_chi, (), value)])


def chi_monomial(rs: RootSystem, field, chi: Sequence[int], flag: str | None = None) -> CellPolynomial:
    if flag is None:
        flag = MONOID if all(c <= 0 for c in chi) else LAURENT
    return cell_polynomial(rs, field, flag, [(tuple(chi), (), field.one())])


def xi_monomial(rs: RootSystem, field, root_index: int, flag: str = MONOID) -> CellPolynomial:
    zero_chi = tuple(0 for _ in range(rs.rank))
    return cell_polynomial(rs, field, flag, [(zero_chi, ((root_index, 1),), field.one())])


def _check_compatible(f: CellPolynomial, g: CellPolynomial) -> None:
    if f.rs != g.rs:
        raise RingFlagError("polynomials over different root systems")
    if f.field != g.field:
        raise RingFlagError("polynomials over different coefficient fields")
    if f.flag != g.flag:
        raise RingFlagError(f"ring flags differ: {f.flag} vs {g.flag}")


def poly_add(f: CellPolynomial, g: CellPolynomial) -> CellPolynomial:
    _check_compatible(f, g)
    terms = [(chi, nu, a) for chi, nu, a in f.terms]
    terms += [(chi, nu, a) for chi, nu, a in g.terms]
    return cell_polynomial(f.rs, f.field, f.flag, terms)


def poly_neg(f: CellPolynomial) -> CellPolynomial:
    return cell_polynomial(
        f.rs, f.field, f.flag, [(chi, nu, f.field.neg(a)) for chi, nu, a in f.terms]
    )


def poly_mul(f: CellPolynomial, g: CellPolynomial) -> CellPolynomial:
    """Exact convolution product; zero coefficients are dropped."""
    _check_compatible(f, g)
    field = f.field
    acc: dict[tuple[Chi, Nu], object] = {}
    for chi1, nu1, a1 in f.terms:
        d1 = dict(nu1)
        for chi2, nu2, a2 in g.terms:
            chi = tuple(c1 + c2 for c1, c2 in zip(chi1, chi2))
            merged = dict(d1)
            for idx, m in nu2:
                merged[idx] = merged.get(idx, 0) + m
            key = (chi, tuple(sorted(merged.items())))
            prod = field.mul(a1, a2)
            acc[key] = field.add(acc[key], prod) if key in acc else prod
    clean = tuple(
        (chi, nu, coeff)
        for (chi, nu), coeff in sorted(acc.items())
        if not field.is_zero(coeff)
    )
    return CellPolynomial(rs=f.rs, field=field, flag=f.flag, terms=clean)


# ---------------------------------------------------------------------------
# Seminorm evaluation


def eval_exponent(x: ApartmentPoint, y: BoundaryPoint, chi: Chi, nu: Nu) -> Val:
    """Coefficient-free part of a term's valuation under the (x, y) seminorm.

    The chart of y decides which xi coordinates read y and which read x:
    a root pairs with y exactly when it is negative for y's chart.
    """
    rs = x.rs
    w = y.chart
    winv = inverse(rs, w)
    total = Val(0)
    if any(chi):
        total = total + boundary_value(y, chi) - pair(x, chi)
    for idx, mult in nu:
        beta = rs.roots[idx]
        if not rs.is_positive_index(winv.perm[idx]):
            total = total + boundary_value(y, beta).scale(mult)
        else:
            total = total + pair(x, beta).scale(mult)
    return total


def eval_seminorm(x: ApartmentPoint, y: BoundaryPoint, f: CellPolynomial) -> Val:
    """Seminorm valuation of f at the pair (x, y): min over the terms.

    +inf results exactly when every term meets a vanishing coordinate (in
    particular for the zero polynomial); with y interior the result is
    finite for every nonzero f.
    """
    if f.rs != x.rs or f.rs != y.rs:
        raise RingFlagError("polynomial and points over different root systems")
    if f.flag == LAURENT and not y.is_interior:
        raise SeminormDomainError(
            "laurent polynomial cannot be evaluated at a boundary point"
        )
    best = INF
    for chi, nu, a in f.terms:
        tv = f.field.val(a) + eval_exponent(x, y, chi, nu)
        if tv < best:
            best = tv
    return best


@dataclass(frozen=True)
class Seminorm:
    """The multiplicative seminorm attached to a pair (x, y).

    There is no closed representation beyond the pair itself; evaluation
    is lazy per polynomial.  The chart standardization is y's chart.
    """

    x: ApartmentPoint
    y: BoundaryPoint

    @property
    def chart(self) -> WeylElement:
        return self.y.chart

    def value(self, f: CellPolynomial) -> Val:
        return eval_seminorm(self.x, self.y, f)

    def exponent_value(self, chi: Chi, nu: Nu) -> Val:
        return eval_exponent(self.x, self.y, chi, nu)


def reconstruct(s: Seminorm) -> tuple[ApartmentPoint, BoundaryPoint]:
    """Decode the pair from seminorm values at the chart's xi monomials.

    Positive chart roots read off x, negative simple chart roots read off
    y (vanishing coordinates survive as +inf); the round trip is exact.
    """
    rs = s.x.rs
    w = s.chart
    winv = inverse(rs, w)
    empty: Chi = tuple(0 for _ in range(rs.rank))

    measured = []  # valuation of x at the chart-positive simple images
    for i in range(rs.rank):
        idx = w.perm[rs.simple_indices[i]]
        measured.append(s.exponent_value(empty, ((idx, 1),)).as_fraction())
    xvals = []
    for j in range(rs.rank):
        d = act_vector(rs, winv, rs.simple_root(j))
        xvals.append(sum(Fraction(d[i]) * measured[i] for i in range(rs.rank)))

    yvals = []
    for i in range(rs.rank):
        idx = rs.negate_index(w.perm[rs.simple_indices[i]])
        yvals.append(s.exponent_value(empty, ((idx, 1),)))

    from .apartment import interior_point

    return interior_point(rs, xvals), BoundaryPoint(rs, tuple(yvals), w)


def translate(s: Seminorm, sval: Sequence, tval: Sequence) -> Seminorm:
    """Seminorm of the torus-translated pair.

    Both shift vectors are written against the chart coordinates: sval adds
    to y's coordinates (the valuations at chart(-alpha_i)) and tval to x's,
    so equal shifts cancel on every pure character monomial.
    """
    rs = s.x.rs
    w = s.chart
    winv = inverse(rs, w)
    sval = [Fraction(v) for v in sval]
    tval = [Fraction(v) for v in tval]
    if len(sval) != rs.rank or len(tval) != rs.rank:
        raise ChartError("shift vector length does not match the rank")

    yvals = tuple(v + Val(d) for v, d in zip(s.y.vals, sval))
    new_y = BoundaryPoint(rs, yvals, w)

    dx = []
    for j in range(rs.rank):
        u = act_vector(rs, winv, rs.simple_root(j))
        dx.append(sum(-Fraction(u[i]) * tval[i] for i in range(rs.rank)))
    new_x = shift_interior(s.x, dx)
    return Seminorm(x=new_x, y=new_y)


def weyl_transport(f: CellPolynomial, w: WeylElement) -> CellPolynomial:
    """Chart change on exponent data: chi -> w(chi), xi_beta -> xi_{w(beta)}.

    Coefficients are untouched.  A monoid-flagged polynomial must stay in
    the monoid ring; otherwise the transport is rejected.
    """
    rs = f.rs
    terms = []
    for chi, nu, a in f.terms:
        new_chi = act_vector(rs, w, chi)
        if f.flag == MONOID and any(c > 0 for c in new_chi):
            raise RingFlagError(
                "transported character leaves the monoid ring"
            )
        new_nu = tuple(sorted((w.perm[idx], m) for idx, m in nu))
        terms.append((new_chi, new_nu, a))
    return CellPolynomial(rs=rs, field=f.field, flag=f.flag, terms=tuple(sorted(terms)))


# ---------------------------------------------------------------------------
# Polynomial files
#
# Header "ring: monoid|laurent", then one term per line:
#     coeff ; chi = c1,...,cn ; nu = (root:mult, root:mult)
# The chi entries are over the simple-root basis; nu may be empty.


def format_polynomial(f: CellPolynomial) -> str:
    lines = [f"ring: {f.flag}"]
    for chi, nu, a in f.terms:
        chi_txt = ",".join(str(c) for c in chi)
        nu_txt = ", ".join(f"{idx}:{m}" for idx, m in nu)
        nu_field = f"({nu_txt})" if nu_txt else ""
        lines.append(f"{f.field.format(a)} ; chi = {chi_txt} ; nu = {nu_field}")
    return "\n".join(lines) + "\n"


def parse_polynomial(rs: RootSystem, field, text: str) -> CellPolynomial:
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines or not lines[0].lower().startswith("ring:"):
        raise RingFlagError("polynomial file must start with a 'ring:' header")
    flag = lines[0].split(":", 1)[1].strip().lower()
    if flag not in (LAURENT, MONOID):
        raise RingFlagError(f"unknown ring flag {flag!r}")
    terms = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = [p.strip() for p in ln.split(";")]
        if len(parts) != 3:
            raise RingFlagError(f"line {lineno}: expected 'coeff ; chi = ... ; nu = ...'")
        coeff = field.parse(parts[0])
        if not parts[1].startswith("chi"):
            raise RingFlagError(f"line {lineno}: missing chi field")
        chi_txt = parts[1].split("=", 1)[1].strip()
        try:
            chi = tuple(int(tok) for tok in chi_txt.split(",")) if chi_txt else ()
        except ValueError as exc:
            raise RingFlagError(f"line {lineno}: bad chi {chi_txt!r}") from exc
        if len(chi) != rs.rank:
            raise RingFlagError(f"line {lineno}: chi needs {rs.rank} entries")
        if not parts[2].startswith("nu"):
            raise RingFlagError(f"line {lineno}: missing nu field")
        nu_txt = parts[2].split("=", 1)[1].strip().strip("()").strip()
        nu = []
        if nu_txt:
            for item in nu_txt.split(","):
                try:
                    idx, m = item.split(":")
                    nu.append((int(idx), int(m)))
                except ValueError as exc:
                    raise RingFlagError(f"line {lineno}: bad nu item {item!r}") from exc
        terms.append((chi, nu, coeff))
    return cell_polynomial(rs, field, flag, terms)
