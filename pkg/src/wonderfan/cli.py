"""Command-line front end.

Global flags pick the session (root system, coefficient model, base, seed),
subcommands run one computation each.  All exact output goes to stdout (or
--out); every error path exits nonzero after a single machine-parsable
"error: <kind>: <message>" line on stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import apartment as ap
from . import bigcell as bc
from . import plot as pl
from . import wonder as wd
from .rootsys import (
    ParabolicType,
    RootSystem,
    RootSystemError,
    WeylCapError,
    build_root_system,
    coset_min_rep,
    full_type,
)
from .valued import PAdicField, TAdicField, ValError, abs_value
from .verify import HarnessError, run_suite


@dataclass
class SessionConfig:
    system: str = "A2"
    prime: int = 2
    t_adic: bool = False
    base: Fraction = Fraction(2)
    seed: int = 0
    out: str | None = None
    decimals: bool = False

    def __post_init__(self):
        self.base = Fraction(self.base)
        if self.base <= 1:
            raise ValError(f"presentation base must be > 1, got {self.base}")
        self.rs: RootSystem = build_root_system(self.system)
        self.field = TAdicField() if self.t_adic else PAdicField(self.prime)


def _read_records(path: str) -> list[str]:
    text = Path(path).read_text(encoding="utf-8")
    return [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]


def _emit(config: SessionConfig, text: str) -> None:
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_eval(config: SessionConfig, point_file: str, poly_file: str) -> int:
    records = _read_records(point_file)
    if len(records) < 2:
        raise ap.ChartError(
            f"{point_file}: need two point records (interior x, then y)"
        )
    x = ap.to_interior(ap.parse_point(config.rs, records[0]))
    y = ap.parse_point(config.rs, records[1])
    f = bc.parse_polynomial(config.rs, config.field, Path(poly_file).read_text())
    v = bc.eval_seminorm(x, y, f)
    lines = [f"val {v}"]
    if config.decimals:
        lines.append(f"abs {abs_value(v, config.base)!r}")
    _emit(config, "\n".join(lines) + "\n")
    return 0


def cmd_classify(config: SessionConfig, point_file: str) -> int:
    rs = config.rs
    lines = []
    for k, record in enumerate(_read_records(point_file), start=1):
        y = ap.parse_point(rs, record)
        tau = ap.classify_stratum(y)
        desc = wd.StratumDescriptor(rs, tau, coset_min_rep(rs, y.chart, tau))
        lines.append(f"point={k} {desc.report()}")
    _emit(config, "\n".join(lines) + "\n")
    return 0


def cmd_poset(config: SessionConfig) -> int:
    wd.closure_poset(config.rs)  # certifies both characterizations agree
    _emit(config, wd.poset_dot(config.rs))
    return 0


def cmd_verify(config: SessionConfig, suite: str, samples: int | None) -> int:
    reports = run_suite(
        config.system, suite, seed=config.seed, samples=samples, field=config.field
    )
    text = "".join(r.to_json_line() + "\n" for r in reports)
    _emit(config, text)
    failed = [r for r in reports if not r.passed]
    for r in reports:
        print(
            f"{r.name}: {'pass' if r.passed else 'FAIL'} "
            f"({r.samples} samples, {r.elapsed:.2f}s)",
            file=sys.stderr,
        )
    return 1 if failed else 0


def cmd_plot(config: SessionConfig, overlay: bool) -> int:
    geom = pl.plot_geometry(config.rs, overlay=overlay)
    base = config.out or f"{config.rs.spec}_apartment"
    svg_path = Path(f"{base}.svg")
    csv_path = Path(f"{base}.csv")
    svg_path.write_text(pl.render_svg(geom), encoding="utf-8")
    csv_path.write_text(pl.render_csv(geom), encoding="utf-8")
    sys.stdout.write(f"wrote {svg_path}\nwrote {csv_path}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wonderfan",
        description=(
            "Exact seminorm evaluation on compactified apartments, boundary "
            "stratum combinatorics, and a property-verification harness."
        ),
    )
    parser.add_argument("--system", default="A2", help="root system, e.g. A2 or B2xA1")
    model = parser.add_mutually_exclusive_group()
    model.add_argument("--prime", type=int, default=2, help="p-adic coefficient model")
    model.add_argument(
        "--t-adic", action="store_true", help="rational-function coefficient model"
    )
    parser.add_argument("--base", default="2", help="presentation base b > 1")
    parser.add_argument("--seed", type=int, default=0, help="harness seed")
    parser.add_argument("--out", default=None, help="write output to this path")
    parser.add_argument(
        "--decimals", action="store_true", help="also print b^(-val) as a decimal"
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a seminorm on a polynomial")
    p_eval.add_argument("point_file")
    p_eval.add_argument("poly_file")

    p_classify = sub.add_parser("classify", help="classify boundary points by stratum")
    p_classify.add_argument("point_file")

    sub.add_parser("poset", help="emit the stratum closure poset as DOT")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", default="all")
    p_verify.add_argument("--samples", type=int, default=None)

    p_plot = sub.add_parser("plot", help="rank-2 apartment picture (SVG + CSV)")
    p_plot.add_argument(
        "--overlay", action="store_true", help="mark the boundary base points"
    )

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = SessionConfig(
            system=args.system,
            prime=args.prime,
            t_adic=args.t_adic,
            base=Fraction(args.base),
            seed=args.seed,
            out=args.out,
            decimals=args.decimals,
        )
        if args.command == "eval":
            return cmd_eval(config, args.point_file, args.poly_file)
        if args.command == "classify":
            return cmd_classify(config, args.point_file)
        if args.command == "poset":
            return cmd_poset(config)
        if args.command == "verify":
            return cmd_verify(config, args.suite, args.samples)
        if args.command == "plot":
            return cmd_plot(config, args.overlay)
        raise HarnessError(f"unknown command {args.command!r}")  # pragma: no cover
    except (
        RootSystemError,
        WeylCapError,
        ValError,
        ap.ChartError,
        bc.RingFlagError,
        bc.SeminormDomainError,
        wd.StratumError,
        pl.PlotError,
        HarnessError,
        OSError,
    ) as exc:
        kind = type(exc).__name__
        message = " ".join(str(exc).split())
        print(f"error: {kind}: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
