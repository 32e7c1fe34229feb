"""Randomized and exhaustive property harness with reproducible reports.

Every check derives its random stream from (seed, check name, system), so
a report is reproducible from the pair (system spec, seed) alone.  Failure
records are serialized with the same text formats the CLI parses, making
any counterexample an immediate regression fixture.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import apartment as ap
from . import bigcell as bc
from . import wonder as wd
from .rootsys import (
    RootSystem,
    act_vector,
    all_types,
    build_root_system,
    element_from_word,
    full_type,
    identity_element,
    inverse,
    weyl_group,
)
from .valued import INF, PAdicField, Val


class HarnessError(ValueError):
    """Unknown suite or malformed harness configuration."""


@dataclass
class CheckReport:
    """Outcome of one named check; empty failures means pass.

    ``elapsed`` is measured wall time and deliberately excluded from the
    serialized record so that reports are byte-identical across runs.
    """

    name: str
    system: str
    samples: int
    seed: int
    failures: list = dc_field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_record(self) -> dict:
        return {
            "check": self.name,
            "system": self.system,
            "samples": self.samples,
            "seed": self.seed,
            "pass": self.passed,
            "failures": self.failures,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json_line(line: str) -> "CheckReport":
        data = json.loads(line)
        return CheckReport(
            name=data["check"],
            system=data["system"],
            samples=data["samples"],
            seed=data["seed"],
            failures=data["failures"],
        )


def _rng(seed: int, name: str, rs: RootSystem) -> random.Random:
    return random.Random(f"{seed}|{name}|{rs.spec}")


# ---------------------------------------------------------------------------
# Sampling (small rationals: denominator <= 8, magnitude <= 8; boundary
# coordinates forced with probability 1/3 per simple root)

INF_PROB = Fraction(1, 3)


def sample_fraction(rng: random.Random) -> Fraction:
    den = rng.randint(1, 8)
    num = rng.randint(-8 * den, 8 * den)
    return Fraction(num, den)


def sample_interior(rs: RootSystem, rng: random.Random) -> ap.ApartmentPoint:
    return ap.interior_point(rs, [sample_fraction(rng) for _ in range(rs.rank)])


def sample_chart(rs: RootSystem, rng: random.Random):
    word = tuple(rng.randrange(rs.rank) for _ in range(rng.randint(0, 3)))
    return element_from_word(rs, word)


def sample_boundary(
    rs: RootSystem, rng: random.Random, chart=None, force_boundary: bool = False
) -> ap.BoundaryPoint:
    if chart is None:
        chart = identity_element(rs)
    vals = [
        INF if rng.random() < INF_PROB else Val(sample_fraction(rng))
        for _ in range(rs.rank)
    ]
    if force_boundary and all(not v.is_inf for v in vals):
        vals[rng.randrange(rs.rank)] = INF
    return ap.BoundaryPoint(rs, tuple(vals), chart)


def sample_coeff(field, rng: random.Random):
    num = rng.choice([n for n in range(-64, 65) if n != 0])
    den = rng.randint(1, 64)
    return field.parse(str(Fraction(num, den)))


def sample_poly(
    rs: RootSystem,
    field,
    rng: random.Random,
    flag: str = bc.MONOID,
    max_terms: int = 6,
) -> bc.CellPolynomial:
    while True:  # duplicate exponents may cancel; resample the rare zero
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            if flag == bc.MONOID:
                chi = tuple(rng.randint(-3, 0) for _ in range(rs.rank))
            else:
                chi = tuple(rng.randint(-3, 3) for _ in range(rs.rank))
            nu = []
            for _ in range(rng.randint(0, 2)):
                nu.append((rng.randrange(rs.n_roots), rng.randint(1, 2)))
            terms.append((chi, nu, sample_coeff(field, rng)))
        f = bc.cell_polynomial(rs, field, flag, terms)
        if not f.is_zero:
            return f


def _serialize_pair(x: ap.ApartmentPoint, y: ap.BoundaryPoint) -> dict:
    return {
        "x": ap.format_point(ap.interior_embed(x)),
        "y": ap.format_point(y),
    }


# ---------------------------------------------------------------------------
# Checks


def check_injectivity(
    rs: RootSystem, samples: int = 200, seed: int = 0, field=None
) -> CheckReport:
    """Reconstruction round-trips exactly, and distinct pairs stay
    distinguishable on the chart's monomial signature."""
    field = field or PAdicField(2)
    rng = _rng(seed, "injectivity", rs)
    report = CheckReport("injectivity", rs.spec, samples, seed)
    t0 = time.perf_counter()
    for _ in range(samples):
        chart = sample_chart(rs, rng)
        x = sample_interior(rs, rng)
        y = sample_boundary(rs, rng, chart)
        x2, y2 = bc.reconstruct(bc.Seminorm(x, y))
        if x2 != x or y2 != y:
            failure = _serialize_pair(x, y)
            failure["detail"] = "reconstruction mismatch"
            report.failures.append(failure)
            continue
        x_alt = sample_interior(rs, rng)
        y_alt = sample_boundary(rs, rng, chart)
        if (x_alt, y_alt) != (x, y):
            sig = bc.reconstruct(bc.Seminorm(x, y))
            sig_alt = bc.reconstruct(bc.Seminorm(x_alt, y_alt))
            if sig == sig_alt:
                failure = _serialize_pair(x, y)
                failure.update(
                    {"detail": "colliding pair", **{f"alt_{k}": v for k, v in _serialize_pair(x_alt, y_alt).items()}}
                )
                report.failures.append(failure)
    report.elapsed = time.perf_counter() - t0
    return report


def _translation_shift(rs, chart, chi, nu, sval, tval) -> Val:
    # independent per-term multiplier route for the torus action
    winv = inverse(rs, chart)
    m = [-c for c in act_vector(rs, winv, chi)]
    total = sum(Fraction(mi) * (s - t) for mi, s, t in zip(m, sval, tval))
    for idx, mult in nu:
        beta = rs.roots[idx]
        mb = [-c for c in act_vector(rs, winv, beta)]
        if not rs.is_positive_index(winv.perm[idx]):
            total += mult * sum(Fraction(mi) * s for mi, s in zip(mb, sval))
        else:
            total += mult * sum(Fraction(mi) * t for mi, t in zip(mb, tval))
    return Val(total)


def check_equivariance(
    rs: RootSystem, samples: int = 200, seed: int = 0, field=None
) -> CheckReport:
    """Torus translation via per-term multipliers matches re-evaluation at
    the shifted pair, and the evaluation formula commutes with twisting
    every datum by a Weyl element."""
    field = field or PAdicField(2)
    rng = _rng(seed, "equivariance", rs)
    report = CheckReport("equivariance", rs.spec, samples, seed)
    t0 = time.perf_counter()
    elements = weyl_group(rs).elements
    for _ in range(samples):
        chart = sample_chart(rs, rng)
        x = sample_interior(rs, rng)
        y = sample_boundary(rs, rng, chart)
        f = sample_poly(rs, field, rng, bc.MONOID)
        sval = [sample_fraction(rng) for _ in range(rs.rank)]
        tval = [sample_fraction(rng) for _ in range(rs.rank)]
        s = bc.Seminorm(x, y)
        try:
            direct = bc.translate(s, sval, tval).value(f)
        except (ap.ChartError, bc.SeminormDomainError):
            continue
        try:
            shifted_terms = [
                field.val(a) + bc.eval_exponent(x, y, chi, nu)
                + _translation_shift(rs, chart, chi, nu, sval, tval)
                for chi, nu, a in f.terms
            ]
        except ap.ChartError:
            continue
        oracle = min(shifted_terms) if shifted_terms else INF
        if direct != oracle:
            failure = _serialize_pair(x, y)
            failure["f"] = bc.format_polynomial(f)
            failure["detail"] = "torus translation mismatch"
            report.failures.append(failure)

        # Weyl twist on interior data, any element
        w = elements[rng.randrange(len(elements))]
        xi = sample_interior(rs, rng)
        yi = ap.interior_embed(sample_interior(rs, rng))
        g = sample_poly(rs, field, rng, bc.LAURENT)
        lhs = bc.eval_seminorm(
            ap.weyl_act_interior(w, xi),
            ap.weyl_act_boundary(w, yi),
            bc.weyl_transport(g, w),
        )
        rhs = bc.eval_seminorm(xi, yi, g)
        if lhs != rhs:
            failure = _serialize_pair(xi, yi)
            failure["f"] = bc.format_polynomial(g)
            failure["w"] = ".".join(str(j) for j in w.word) or "e"
            failure["detail"] = "weyl covariance mismatch"
            report.failures.append(failure)
    report.elapsed = time.perf_counter() - t0
    return report


def _val_tail_converges(values: list[Val], target: Val) -> bool:
    tail = values[len(values) // 2 :]
    if not target.is_inf:
        return all(v == target for v in tail)
    if len(tail) == 1:
        return tail[0].is_inf
    for a, b in zip(tail, tail[1:]):
        if a.is_inf and b.is_inf:
            continue
        if not a < b:
            return False
    return True


def make_converging_sequence(
    rs: RootSystem, y: ap.BoundaryPoint, horizon: int, step: int = 100
) -> list[ap.BoundaryPoint]:
    """Interior-coordinate approximants of y: finite coordinates held
    fixed, vanishing ones pushed linearly with slope ``step``.

    The slope dominates every offset the samplers can produce, so a finite
    limit value is reached well inside the inspected window.
    """
    seq = []
    for n in range(horizon):
        vals = tuple(Val(step * n) if v.is_inf else v for v in y.vals)
        seq.append(ap.BoundaryPoint(rs, vals, y.chart))
    return seq


def check_continuity(
    rs: RootSystem,
    samples: int = 200,
    horizon: int = 50,
    seed: int = 0,
    field=None,
) -> CheckReport:
    """Seminorm values along convergent coordinate sequences converge to
    the boundary value; oscillating sequences are flagged non-convergent."""
    field = field or PAdicField(2)
    rng = _rng(seed, "continuity", rs)
    report = CheckReport("continuity", rs.spec, samples, seed)
    t0 = time.perf_counter()
    for _ in range(samples):
        x = sample_interior(rs, rng)
        y = sample_boundary(rs, rng, force_boundary=True)
        f = sample_poly(rs, field, rng, bc.MONOID)
        seq = make_converging_sequence(rs, y, horizon)
        if not ap.converges(seq, y, horizon):
            report.failures.append(
                {**_serialize_pair(x, y), "detail": "constructed sequence rejected"}
            )
            continue
        values = [bc.eval_seminorm(x, p, f) for p in seq]
        limit = bc.eval_seminorm(x, y, f)
        if not _val_tail_converges(values, limit):
            failure = _serialize_pair(x, y)
            failure["f"] = bc.format_polynomial(f)
            failure["detail"] = "seminorm values do not converge to the limit"
            report.failures.append(failure)
        # oscillation must be rejected
        wobble = [
            ap.BoundaryPoint(
                rs,
                tuple(Val((-1) ** n) if v.is_inf else v for v in y.vals),
                y.chart,
            )
            for n in range(horizon)
        ]
        if ap.converges(wobble, y, horizon):
            report.failures.append(
                {**_serialize_pair(x, y), "detail": "oscillating sequence accepted"}
            )
    report.elapsed = time.perf_counter() - t0
    return report


def check_strata(rs: RootSystem, samples: int = 100, seed: int = 0) -> CheckReport:
    """Exhaustive stratum bookkeeping: base points classify back to their
    types, one-parameter limits land on base points, membership patterns
    match, both closure characterizations agree, and the projection to the
    flag coordinates is constant across each stratum fiber."""
    rng = _rng(seed, "strata", rs)
    report = CheckReport("strata", rs.spec, samples, seed)
    t0 = time.perf_counter()
    types = all_types(rs)

    poset = wd.closure_poset(rs)
    if poset.stratum_count != 2 ** rs.rank:
        report.failures.append({"detail": "stratum count is not 2^rank"})
    if len(poset.divisors) != rs.rank:
        report.failures.append({"detail": "divisor count is not the rank"})

    for tau in types:
        base = wd.base_point(rs, tau)
        if ap.classify_stratum(base) != tau:
            report.failures.append(
                {"detail": f"classify(base_point({tau})) mismatch"}
            )
        if wd.one_ps_limit(rs, wd.lambda_for_type(rs, tau)) != base:
            report.failures.append({"detail": f"one_ps_limit(lambda_{tau}) mismatch"})

        x = sample_interior(rs, rng)
        try:
            wd.stratum_membership(x, base)
        except wd.StratumError as exc:  # pragma: no cover - would be a bug
            report.failures.append({"detail": f"membership pattern: {exc}"})

        if len(tau) < rs.rank:
            x0 = ap.origin(rs)
            _, flag0 = wd.project_pi_tau(x0, base)
            if any(v != Val(0) for _, v in flag0.coords):
                report.failures.append(
                    {"detail": f"pi_tau at the base pair is not the unit pattern ({tau})"}
                )
            seen = set()
            for _ in range(samples):
                vals = tuple(
                    Val(sample_fraction(rng)) if i in tau.indices else INF
                    for i in range(rs.rank)
                )
                y = ap.BoundaryPoint(rs, vals, base.chart)
                _, flag = wd.project_pi_tau(x, y)
                seen.add(flag.coords)
            if len(seen) != 1:
                report.failures.append(
                    {"detail": f"pi_tau varies along the stratum fiber ({tau})"}
                )

    # regular cocharacter degenerates to the closed orbit
    regular = [1] * rs.rank
    if wd.one_ps_limit(rs, regular) != wd.base_point(rs, all_types(rs)[0]):
        report.failures.append({"detail": "regular limit is not the closed-orbit point"})
    if wd.one_ps_limit(rs, [0] * rs.rank) != ap.interior_embed(ap.origin(rs)):
        report.failures.append({"detail": "zero cocharacter does not fix the base point"})

    report.elapsed = time.perf_counter() - t0
    return report


def check_seminorm_laws(
    rs: RootSystem, samples: int = 200, seed: int = 0, field=None
) -> CheckReport:
    """Gauss-norm identity at the special pair, exact multiplicativity,
    the ultrametric inequality with its sharp case, and the norm property
    on interior points."""
    field = field or PAdicField(2)
    rng = _rng(seed, "seminorm", rs)
    report = CheckReport("seminorm", rs.spec, samples, seed)
    t0 = time.perf_counter()
    x0 = ap.origin(rs)
    y0 = ap.interior_embed(x0)
    for _ in range(samples):
        f = sample_poly(rs, field, rng, bc.MONOID)
        g = sample_poly(rs, field, rng, bc.MONOID)
        gauss = bc.eval_seminorm(x0, y0, f)
        expected = min(field.val(a) for _, _, a in f.terms)
        if gauss != expected:
            report.failures.append(
                {"f": bc.format_polynomial(f), "detail": "gauss norm mismatch"}
            )

        x = sample_interior(rs, rng)
        y = sample_boundary(rs, rng)
        vf = bc.eval_seminorm(x, y, f)
        vg = bc.eval_seminorm(x, y, g)
        if bc.eval_seminorm(x, y, bc.poly_mul(f, g)) != vf + vg:
            failure = _serialize_pair(x, y)
            failure.update(
                {"f": bc.format_polynomial(f), "g": bc.format_polynomial(g)}
            )
            failure["detail"] = "multiplicativity failure"
            report.failures.append(failure)
        vsum = bc.eval_seminorm(x, y, bc.poly_add(f, g))
        if vsum < min(vf, vg):
            report.failures.append(
                {**_serialize_pair(x, y), "detail": "ultrametric failure"}
            )
        if vf != vg and vsum != min(vf, vg):
            report.failures.append(
                {**_serialize_pair(x, y), "detail": "sharp ultrametric failure"}
            )

        yi = ap.interior_embed(sample_interior(rs, rng))
        h = sample_poly(rs, field, rng, bc.LAURENT)
        if not h.is_zero and bc.eval_seminorm(x, yi, h).is_inf:
            report.failures.append(
                {"f": bc.format_polynomial(h), "detail": "norm vanishes on interior"}
            )
    report.elapsed = time.perf_counter() - t0
    return report


def check_gluing(rs: RootSystem, samples: int = 100, seed: int = 0) -> CheckReport:
    """Chart gluing is an equivalence compatible with transport, interior
    points glue across all charts, and the fan cones cover the apartment."""
    rng = _rng(seed, "gluing", rs)
    report = CheckReport("gluing", rs.spec, samples, seed)
    t0 = time.perf_counter()
    group = weyl_group(rs)
    cones = ap.chambers(rs)
    for _ in range(samples):
        x = sample_interior(rs, rng)
        w1 = sample_chart(rs, rng)
        w2 = sample_chart(rs, rng)
        p = ap.interior_embed(x, w1)
        q = ap.interior_embed(x, w2)
        if not ap.glue_equal(p, q):
            report.failures.append(
                {"x": ap.format_point(ap.interior_embed(x)), "detail": "interior gluing"}
            )
        if not ap.glue_equal(p, p):
            report.failures.append({"detail": "glue_equal not reflexive"})
        if ap.glue_equal(p, q) != ap.glue_equal(q, p):
            report.failures.append({"detail": "glue_equal not symmetric"})

        y = sample_boundary(rs, rng, w1)
        moved = None
        for w in group.elements:
            try:
                moved = ap.transport(y, w)
                break
            except ap.ChartError:
                continue
        if moved is not None and not ap.glue_equal(y, moved):
            report.failures.append(
                {"y": ap.format_point(y), "detail": "transport breaks gluing"}
            )

        if not any(c.contains(x) for c in cones):
            report.failures.append(
                {"x": ap.format_point(ap.interior_embed(x)), "detail": "fan cover gap"}
            )
    report.elapsed = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------------------
# Suites and coverage

CHECKS = {
    "injectivity": check_injectivity,
    "equivariance": check_equivariance,
    "continuity": check_continuity,
    "strata": check_strata,
    "seminorm": check_seminorm_laws,
    "gluing": check_gluing,
}

SUITES = {name: (name,) for name in CHECKS}
SUITES["all"] = tuple(sorted(CHECKS))

# Which harness check exercises each declared module invariant.
COVERAGE = {
    "apartment.classify_extremes": "strata",
    "apartment.fan_cover": "gluing",
    "apartment.glue_equivalence": "gluing",
    "apartment.stratum_count": "strata",
    "bigcell.multiplicativity": "seminorm",
    "bigcell.ultrametric": "seminorm",
    "bigcell.norm_on_interior": "seminorm",
    "bigcell.reconstruction_roundtrip": "injectivity",
    "bigcell.torus_equivariance": "equivariance",
    "bigcell.weyl_covariance": "equivariance",
    "bigcell.continuity": "continuity",
    "wonder.base_point_classification": "strata",
    "wonder.one_ps_limits": "strata",
    "wonder.closure_characterizations": "strata",
    "wonder.stratum_counts": "strata",
    "wonder.pi_tau_fibers": "strata",
    "wonder.boundary_stratification": "strata",
}


def run_suite(
    system: str,
    suite: str = "all",
    seed: int = 0,
    samples: int | None = None,
    field=None,
) -> list[CheckReport]:
    """Run a named suite on a system spec; reports come back in a fixed
    deterministic order (sorted by check name)."""
    if suite not in SUITES:
        raise HarnessError(f"unknown suite {suite!r} (try one of {sorted(SUITES)})")
    rs = build_root_system(system)
    reports = []
    for name in SUITES[suite]:
        check = CHECKS[name]
        kwargs = {"seed": seed}
        if samples is not None:
            kwargs["samples"] = samples
        if name in ("injectivity", "equivariance", "continuity", "seminorm"):
            kwargs["field"] = field
        reports.append(check(rs, **kwargs))
    return reports
