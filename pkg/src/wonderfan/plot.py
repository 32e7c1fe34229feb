"""Rank-2 apartment pictures: Weyl chambers, one compactified corner, and
the distinguished boundary base points.

The drawing plane uses the valuation coordinates (one per simple root), so
all chamber walls are rational lines through the origin.  The CSV is the
testable artifact (exact fractions, "inf" for ideal points); the SVG is
presentation only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .rootsys import RootSystem, act_vector, all_types, length, weyl_group
from .valued import INF, Val


class PlotError(ValueError):
    """Plotting preconditions violated (rank must be exactly 2)."""


def _primitive(vec: tuple[int, int]) -> tuple[int, int]:
    a, b = vec
    g = gcd(abs(a), abs(b))
    return (a // g, b // g) if g else (0, 0)


@dataclass(frozen=True)
class ChamberGeometry:
    label: str
    rays: tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class PlotGeometry:
    rs: RootSystem
    chambers: tuple[ChamberGeometry, ...]
    corner_walls: tuple[tuple[int, int], tuple[int, int]]
    basepoints: tuple[tuple[str, tuple[Val, Val]], ...]


def plot_geometry(rs: RootSystem, overlay: bool = True) -> PlotGeometry:
    """Chamber rays for every Weyl chamber, the base-chamber corner, and
    (optionally) the boundary base points of the corner."""
    if rs.rank != 2:
        raise PlotError(f"apartment plots need rank 2, got rank {rs.rank}")
    group = weyl_group(rs)

    chambers = []
    for w in sorted(group.elements, key=lambda w: (len(w.word), w.word)):
        rows = [act_vector(rs, w, rs.simple_root(i)) for i in range(2)]
        rays = []
        for tight, other in ((0, 1), (1, 0)):
            a, b = rows[tight]
            for cand in ((-b, a), (b, -a)):
                if rows[other][0] * cand[0] + rows[other][1] * cand[1] <= 0:
                    rays.append(_primitive(cand))
                    break
        label = ".".join(str(j) for j in w.word) or "e"
        chambers.append(ChamberGeometry(label=label, rays=(rays[0], rays[1])))

    basepoints = []
    if overlay:
        for tau in all_types(rs):
            coords = tuple(
                Val(0) if i in tau.indices else INF for i in range(2)
            )
            basepoints.append((tau.bits(2), coords))

    return PlotGeometry(
        rs=rs,
        chambers=tuple(chambers),
        corner_walls=((-1, 0), (0, -1)),
        basepoints=tuple(basepoints),
    )


def render_csv(geom: PlotGeometry) -> str:
    """Exact geometry table: kind,label,c1,c2 with fraction coordinates."""
    lines = ["kind,label,c1,c2"]
    for ch in geom.chambers:
        for k, ray in enumerate(ch.rays):
            lines.append(f"chamber_ray,{ch.label}/{k},{ray[0]},{ray[1]}")
    for k, wall in enumerate(geom.corner_walls):
        lines.append(f"corner_wall,{k},{wall[0]},{wall[1]}")
    for bits, (u1, u2) in geom.basepoints:
        lines.append(f"basepoint,{bits},{u1},{u2}")
    return "\n".join(lines) + "\n"


# SVG helpers --------------------------------------------------------------

_SCALE = 90.0
_RADIUS = 3.0


def _svg_xy(x: float, y: float) -> str:
    # flip y so positive valuations point up
    return f"{320 + _SCALE * x:.2f},{320 - _SCALE * y:.2f}"


def _squash(u: Val) -> float:
    # [0, inf] -> [0, 1): ideal points land on the box edge
    if u.is_inf:
        return 1.0
    return 1.0 - 2.0 ** float(-u.as_fraction())


def render_svg(geom: PlotGeometry) -> str:
    """Presentation picture: chamber sectors, corner grid, base points."""
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" '
        'viewBox="0 0 640 640">',
        '<rect width="640" height="640" fill="white"/>',
    ]
    palette = ["#dbeafe", "#ede9fe", "#dcfce7", "#fee2e2", "#fef9c3", "#e0f2fe"]
    for i, ch in enumerate(geom.chambers):
        (a1, b1), (a2, b2) = ch.rays
        n1 = max(1.0, (a1 * a1 + b1 * b1) ** 0.5)
        n2 = max(1.0, (a2 * a2 + b2 * b2) ** 0.5)
        p0 = _svg_xy(0.0, 0.0)
        p1 = _svg_xy(_RADIUS * a1 / n1, _RADIUS * b1 / n1)
        p2 = _svg_xy(_RADIUS * a2 / n2, _RADIUS * b2 / n2)
        color = palette[i % len(palette)]
        parts.append(
            f'<polygon points="{p0} {p1} {p2}" fill="{color}" '
            'fill-opacity="0.6" stroke="#475569" stroke-width="1"/>'
        )
        mx = _RADIUS * 0.55 * (a1 / n1 + a2 / n2) / 2
        my = _RADIUS * 0.55 * (b1 / n1 + b2 / n2) / 2
        parts.append(
            f'<text x="{320 + _SCALE * mx:.2f}" y="{320 - _SCALE * my:.2f}" '
            f'font-size="12" text-anchor="middle" fill="#0f172a">{ch.label}</text>'
        )

    # compactified corner of the base chamber: grid of coordinate levels
    corner = 2.6
    levels = [Val(0), Val(1), Val(2), Val(3), INF]
    for lv in levels:
        s = corner * _squash(lv)
        dash = ' stroke-dasharray="4 3"' if lv.is_inf else ""
        parts.append(
            f'<polyline points="{_svg_xy(-s, 0)} {_svg_xy(-s, -corner)}" '
            f'fill="none" stroke="#0ea5e9" stroke-width="1"{dash}/>'
        )
        parts.append(
            f'<polyline points="{_svg_xy(0, -s)} {_svg_xy(-corner, -s)}" '
            f'fill="none" stroke="#0ea5e9" stroke-width="1"{dash}/>'
        )

    for bits, (u1, u2) in geom.basepoints:
        px = -corner * _squash(u1)
        py = -corner * _squash(u2)
        parts.append(
            f'<circle cx="{320 + _SCALE * px:.2f}" cy="{320 - _SCALE * py:.2f}" '
            'r="5" fill="#b91c1c"/>'
        )
        parts.append(
            f'<text x="{320 + _SCALE * px + 8:.2f}" y="{320 - _SCALE * py - 8:.2f}" '
            f'font-size="11" fill="#b91c1c">e_{bits}</text>'
        )

    parts.append(
        f'<text x="12" y="24" font-size="13" fill="#0f172a">'
        f"{geom.rs.spec}: {len(geom.chambers)} chambers</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
