"""PBM and SVG output for periodic patterns, with an optional symmetry overlay.

Overlay conventions: mirror axes are double lines, glide axes dashed lines,
half-turn centres lozenges and quarter-turn centres squares.  A glyph is
filled, or its line drawn in red, when the isometry reverses the sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .isometry import Point, SignedIsometry
from .pattern import Colour, PeriodicPattern
from .symmetry import Direction, Kind, SymmetryGroup, axis_data, rotation_centre


class RenderFormat(Enum):
    PBM = "pbm"
    SVG = "svg"


CELL = 20  # pixels per cell in SVG output
_SHIFTS = range(-3, 4)


def render(p: PeriodicPattern, fmt: RenderFormat | str = RenderFormat.PBM, overlay: SymmetryGroup | None = None) -> bytes:
    fmt = RenderFormat(fmt) if isinstance(fmt, str) else fmt
    if fmt is RenderFormat.PBM:
        return to_pbm(p)
    return to_svg(p, overlay)


def to_pbm(p: PeriodicPattern) -> bytes:
    lines = [f"P1\n{p.width} {p.height}"]
    for j in reversed(range(p.height)):
        lines.append(" ".join("1" if p.cell(i, j) is Colour.Dark else "0" for i in range(p.width)))
    return ("\n".join(lines) + "\n").encode()


@dataclass(frozen=True)
class Centre:
    x: int  # doubled coordinates
    y: int
    quarter: bool
    tau: bool


@dataclass(frozen=True)
class Axis:
    direction: Direction
    position: int  # doubled intercept, unreduced
    mirror: bool
    tau: bool


def overlay_centres(group: SymmetryGroup) -> list[Centre]:
    """Rotation centres inside the period rectangle, one per distinct point and kind."""
    px, py = group.doubled_period
    found: dict[tuple[int, int, bool], bool] = {}
    quarter_sites = set()
    for g in group.elements:
        if not g.point.is_rotation:
            continue
        quarter = g.point is not Point.R180
        for a in _SHIFTS:
            for b in _SHIFTS:
                h = SignedIsometry(g.point, (g.translation[0] + a * px, g.translation[1] + b * py), g.tau)
                x, y = rotation_centre(h)
                site = (x % px, y % py)
                found[(*site, quarter)] = g.tau
                if quarter:
                    quarter_sites.add(site)
    out = [
        Centre(x, y, q, tau)
        for (x, y, q), tau in found.items()
        if q or (x, y) not in quarter_sites
    ]
    return sorted(out, key=lambda c: (not c.quarter, c.x, c.y, c.tau))


def overlay_axes(group: SymmetryGroup) -> list[Axis]:
    """Reflection axes meeting the period rectangle, one per line, kind and tau."""
    px, py = group.doubled_period
    found = set()
    for g in group.elements:
        if not g.point.is_reflection:
            continue
        mirror = group._describe(g).kind is Kind.Mirror
        for a in _SHIFTS:
            for b in _SHIFTS:
                h = SignedIsometry(g.point, (g.translation[0] + a * px, g.translation[1] + b * py), g.tau)
                direction, k, _ = axis_data(h)
                if _clip(direction, k, px, py) is not None:
                    found.add(Axis(direction, k, mirror, g.tau))
    return sorted(found, key=lambda a: (a.direction.value, a.position, a.mirror, a.tau))


def _clip(direction: Direction, k: int, px: int, py: int):
    """Segment of an axis inside [0, px] x [0, py], in doubled coordinates."""
    if direction is Direction.Vertical:
        return ((k, 0), (k, py)) if 0 <= k <= px else None
    if direction is Direction.Horizontal:
        return ((0, k), (px, k)) if 0 <= k <= py else None
    if direction is Direction.DiagUp:  # x - y = k
        x0, x1 = max(0, k), min(px, py + k)
        return ((x0, x0 - k), (x1, x1 - k)) if x0 < x1 else None
    x0, x1 = max(0, k - py), min(px, k)  # x + y = k
    return ((x0, k - x0), (x1, k - x1)) if x0 < x1 else None


def to_svg(p: PeriodicPattern, overlay: SymmetryGroup | None = None) -> bytes:
    w, h = p.width, p.height
    W, H = w * CELL, h * CELL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>',
    ]
    for j in range(h):
        for i in range(w):
            if p.cell(i, j) is Colour.Dark:
                out.append(f'<rect class="cell" x="{i * CELL}" y="{(h - 1 - j) * CELL}" width="{CELL}" height="{CELL}" fill="#000000"/>')
    if overlay is not None:
        out.extend(_overlay_svg(overlay, h))
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode()


def _pt(x: int, y: int, h: int) -> tuple[float, float]:
    return x * CELL / 2, (2 * h - y) * CELL / 2


def _overlay_svg(group: SymmetryGroup, h: int) -> list[str]:
    px, py = group.doubled_period
    out = ['<g class="overlay" fill="none">']
    for a in overlay_axes(group):
        (x0, y0), (x1, y1) = _clip(a.direction, a.position, px, py)
        (u0, v0), (u1, v1) = _pt(x0, y0, h), _pt(x1, y1, h)
        stroke = "#d62728" if a.tau else "#1f77b4"
        kind = "mirror" if a.mirror else "glide"
        cls = f'class="axis {kind}{" tau" if a.tau else ""}"'
        if a.mirror:
            # two strokes offset across the axis
            dx, dy = _normal(a.direction)
            for s in (-1.5, 1.5):
                out.append(
                    f'<line {cls} x1="{u0 + s * dx:g}" y1="{v0 + s * dy:g}" x2="{u1 + s * dx:g}" '
                    f'y2="{v1 + s * dy:g}" stroke="{stroke}" stroke-width="1"/>'
                )
        else:
            out.append(
                f'<line {cls} x1="{u0:g}" y1="{v0:g}" x2="{u1:g}" y2="{v1:g}" '
                f'stroke="{stroke}" stroke-width="1.5" stroke-dasharray="4 3"/>'
            )
    r = CELL / 4
    for c in overlay_centres(group):
        u, v = _pt(c.x, c.y, h)
        fill = "#d62728" if c.tau else "#ffffff"
        kind = "quarter-turn" if c.quarter else "half-turn"
        cls = f'class="centre {kind}{" tau" if c.tau else ""}"'
        if c.quarter:
            out.append(
                f'<rect {cls} x="{u - r / 2:g}" y="{v - r / 2:g}" width="{r:g}" height="{r:g}" '
                f'fill="{fill}" stroke="#d62728"/>'
            )
        else:
            pts = f"{u:g},{v - r / 2:g} {u + r / 3:g},{v:g} {u:g},{v + r / 2:g} {u - r / 3:g},{v:g}"
            out.append(f'<polygon {cls} points="{pts}" fill="{fill}" stroke="#d62728"/>')
    out.append("</g>")
    return out


def _normal(direction: Direction) -> tuple[float, float]:
    s = 0.7071
    return {
        Direction.Vertical: (1.0, 0.0),
        Direction.Horizontal: (0.0, 1.0),
        Direction.DiagUp: (s, s),
        Direction.DiagDown: (s, -s),
    }[direction]
