"""Unit-circle SVG diagrams of critical portraits."""
from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path

from .circle import Angle, AngleSet, arc_length
from .portrait import CriticalPortrait, unlinked_classes

SIZE = 500
CENTER = SIZE / 2
RADIUS = 180
SHADES = ("#e8eef7", "#f7ece2", "#e6f2e6", "#f3e6f2", "#f6f3dc", "#e2f2f4")
INKS = ("#1f4e8c", "#a3402a", "#2e7d32", "#7b3f8c", "#8c6d1f", "#1f7f8c")


def _pt(a: Angle, r: float = RADIUS) -> tuple[str, str]:
    t = 2 * math.pi * float(a.value)
    return f"{CENTER + r * math.cos(t):.3f}", f"{CENTER - r * math.sin(t):.3f}"


def _pred(block: AngleSet, x: Angle) -> Angle:
    """The element of block just before x, counter-clockwise."""
    els = block.elements
    return els[(els.index(x) - 1) % len(els)]


def _class_path(portrait: CriticalPortrait, intervals) -> str:
    """Boundary of a class region: its arcs joined along hull edges."""
    starts = {s for s, _ in intervals}
    start_of = {s: e for s, e in intervals}
    s0 = intervals[0][0]
    if len(intervals) == 1 and intervals[0][0] == intervals[0][1]:  # no cuts
        x0, y0 = _pt(s0)
        xm, ym = _pt(s0 + Angle(Fraction(1, 2)))
        return (f"M {x0} {y0} A {RADIUS} {RADIUS} 0 1 0 {xm} {ym} "
                f"A {RADIUS} {RADIUS} 0 1 0 {x0} {y0} Z")
    x, y = _pt(s0)
    parts = [f"M {x} {y}"]
    cur = s0
    for _ in range(4 * len(portrait.angles) + 4):
        end = start_of[cur]
        large = 1 if arc_length(cur, end) > Fraction(1, 2) else 0
        x, y = _pt(end)
        parts.append(f"A {RADIUS} {RADIUS} 0 {large} 0 {x} {y}")
        cur, used = end, None
        while cur not in starts:
            options = [(b, _pred(b, cur)) for b in portrait.blocks if cur in b and b is not used]
            if not options:
                break
            used, cur = min(options, key=lambda o: arc_length(o[1], cur) or 1)
            x, y = _pt(cur)
            parts.append(f"L {x} {y}")
        if cur == s0 or cur not in starts:
            break
    parts.append("Z")
    return " ".join(parts)


def portrait_svg(portrait: CriticalPortrait) -> str:
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<title>critical portrait, degree {portrait.degree}</title>',
    ]
    for k, cls in enumerate(unlinked_classes(portrait)):
        shade = SHADES[k % len(SHADES)]
        out.append(f'<path class="unlinked-class" data-class="{cls.index}" '
                   f'd="{_class_path(portrait, cls.intervals)}" fill="{shade}" stroke="none"/>')
    out.append(f'<circle cx="{CENTER}" cy="{CENTER}" r="{RADIUS}" fill="none" stroke="#333" stroke-width="1.5"/>')
    for i, block in enumerate(portrait.blocks):
        ink = INKS[i % len(INKS)]
        pts = [_pt(a) for a in block]
        if len(pts) == 2:
            (x0, y0), (x1, y1) = pts
            out.append(f'<line class="hull" data-block="{i}" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" '
                       f'stroke="{ink}" stroke-width="2"/>')
        else:
            coords = " ".join(f"{x},{y}" for x, y in pts)
            out.append(f'<polygon class="hull" data-block="{i}" points="{coords}" '
                       f'fill="{ink}" fill-opacity="0.25" stroke="{ink}" stroke-width="2"/>')
    for a in portrait.angles:
        x0, y0 = _pt(a, RADIUS - 6)
        x1, y1 = _pt(a, RADIUS + 6)
        lx, ly = _pt(a, RADIUS + 24)
        out.append(f'<line class="tick" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#333"/>')
        out.append(f'<text x="{lx}" y="{ly}" font-family="sans-serif" font-size="13" '
                   f'text-anchor="middle" dominant-baseline="middle">{a}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_portrait(portrait: CriticalPortrait, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(portrait_svg(portrait), encoding="utf-8")
    return path
