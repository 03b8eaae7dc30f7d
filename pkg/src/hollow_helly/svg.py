"""Deterministic SVG drawings of planar families."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .geometry import point
from .intersection import Family, Kind

VIEW = 600
PAD = 30
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22")


def _num(x: Fraction) -> str:
    # rounding here only affects pixels, never a predicate
    s = f"{float(x):.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


@dataclass
class SvgScene:
    width: int
    height: int
    rects: list = field(default_factory=list)  # (x, y, w, h, stroke, filled)
    marks: list = field(default_factory=list)  # (cx, cy)

    def to_element(self) -> ET.Element:
        root = ET.Element(
            "svg",
            xmlns="http://www.w3.org/2000/svg",
            version="1.1",
            width=str(self.width),
            height=str(self.height),
            viewBox=f"0 0 {self.width} {self.height}",
        )
        ET.SubElement(root, "rect", x="0", y="0", width=str(self.width), height=str(self.height), fill="white")
        for x, y, w, h, stroke, filled in self.rects:
            ET.SubElement(
                root,
                "rect",
                x=_num(x),
                y=_num(y),
                width=_num(w),
                height=_num(h),
                fill=stroke if filled else "none",
                attrib={"fill-opacity": "0.15"} if filled else {},
                stroke=stroke,
            ).set("stroke-width", "2")
        for cx, cy in self.marks:
            ET.SubElement(root, "circle", cx=_num(cx), cy=_num(cy), r="4", fill="black")
        return root

    def to_svg(self) -> str:
        body = ET.tostring(self.to_element(), encoding="unicode")
        return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"


def render_svg(f: Family, marks: Sequence = ()) -> SvgScene:
    """Unfilled rectangles for hollow members, translucent ones for solid members, dots for marks.

    Coordinates are scaled uniformly into a 600x600 viewport with the y axis
    pointing up.
    """
    if f.dim != 2:
        raise InputError(f"only planar families can be drawn, got dim {f.dim}")
    marks = [point(m) for m in marks]
    for m in marks:
        if len(m) != 2:
            raise InputError("marks must be planar points")
    xs = [v for m in f.members for v in (m.hull.sides[0].lo, m.hull.sides[0].hi)] + [m[0] for m in marks]
    ys = [v for m in f.members for v in (m.hull.sides[1].lo, m.hull.sides[1].hi)] + [m[1] for m in marks]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or Fraction(1)
    scale = Fraction(VIEW - 2 * PAD) / span
    # centre the drawing along the shorter side
    ox = PAD + (VIEW - 2 * PAD - (x1 - x0) * scale) / 2
    oy = PAD + (VIEW - 2 * PAD - (y1 - y0) * scale) / 2

    def tx(x):
        return ox + (x - x0) * scale

    def ty(y):
        return VIEW - (oy + (y - y0) * scale)

    scene = SvgScene(VIEW, VIEW)
    for k, m in enumerate(f.members):
        (a, b), (c, d) = ((s.lo, s.hi) for s in m.hull.sides)
        scene.rects.append(
            (tx(a), ty(d), (b - a) * scale, (d - c) * scale, PALETTE[k % len(PALETTE)], m.kind is Kind.SOLID)
        )
    for m in marks:
        scene.marks.append((tx(m[0]), ty(m[1])))
    return scene
