"""SVG pictures of assemblies.  3D assemblies are drawn as one panel per z plane."""
from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from typing import Callable, Mapping

from .core import Configuration
from .systems import KEYSTONE_ROLES

ROLE_COLORS = {
    "seed": "#444444",
    "arm": "#4c78a8",
    "finger": "#f58518",
    "keystone": "#e45756",
    "flagpole": "#72b7b2",
    "flag": "#54a24b",
    "writer": "#b279a2",
    "reader": "#eeca3b",
    "tile": "#9d9d9d",
}


# Fractions of a cell for the inner segment marking a glue on each side.
_SIDE_SEGMENTS = {
    "N": ((0.25, 0.12), (0.75, 0.12)),
    "S": ((0.25, 0.88), (0.75, 0.88)),
    "E": ((0.88, 0.25), (0.88, 0.75)),
    "W": ((0.12, 0.25), (0.12, 0.75)),
}


def default_role(name: str) -> str:
    if name in KEYSTONE_ROLES:
        return KEYSTONE_ROLES[name]
    if re.fullmatch(r"w\d+b[01]k\d+", name):
        return "writer"
    if re.match(r"r\d+|READ_|turn\d", name):
        return "reader"
    return "tile"


def render_svg(assembly: Configuration, cell: int = 24,
               roles: Mapping[str, str] | Callable[[str], str] | None = None,
               planes: list[int] | None = None, labels: bool = True) -> str:
    """Draw ``assembly`` with one coloured square per tile and a line per bond.

    Each in-plane glue is marked by a short segment inside its side whose
    stroke width is the glue strength.  ``roles`` maps tile names to role keys of ``ROLE_COLORS``.  For 3D input,
    ``planes`` selects the z slices to draw (all occupied planes by default).
    """
    if callable(roles):
        role_of = roles
    elif roles is not None:
        role_of = lambda n: roles.get(n, "tile")  # noqa: E731
    else:
        role_of = default_role

    dim = assembly.dimension
    if dim == 3:
        zs = sorted(planes if planes is not None else {p[2] for p in assembly})
    else:
        zs = [None]
    if assembly:
        xs = [p[0] for p in assembly]
        ys = [p[1] for p in assembly]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0 = x1 = y0 = y1 = 0
    width_cells = x1 - x0 + 1
    height_cells = y1 - y0 + 1
    gap = 1
    total_w = (width_cells + gap) * len(zs) * cell
    total_h = (height_cells + 1) * cell
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(total_w),
                     height=str(total_h), viewBox=f"0 0 {total_w} {total_h}")
    bonds = assembly.bonds()
    for k, z in enumerate(zs):
        panel_x = k * (width_cells + gap) * cell
        g = ET.SubElement(svg, "g", {"class": "plane", "data-z": "" if z is None else str(z)})
        if z is not None:
            title = ET.SubElement(g, "text", x=str(panel_x + 2), y=str(cell * 0.7),
                                  attrib={"font-size": str(cell // 2)})
            title.text = f"z={z}"

        def xy(p):
            return (panel_x + (p[0] - x0) * cell,
                    (y1 - p[1] + 1) * cell)

        for p, q, _ in bonds:
            if z is not None and (p[2] != z or q[2] != z):
                continue
            (ax, ay), (bx, by) = xy(p), xy(q)
            ET.SubElement(g, "line", x1=str(ax + cell / 2), y1=str(ay + cell / 2),
                          x2=str(bx + cell / 2), y2=str(by + cell / 2),
                          stroke="#222222", attrib={"class": "bond", "stroke-width": "2"})
        for p, t in assembly.sorted_items():
            if z is not None and p[2] != z:
                continue
            role = role_of(t.name)
            x, y = xy(p)
            ET.SubElement(g, "rect", x=str(x + 1), y=str(y + 1), width=str(cell - 2),
                          height=str(cell - 2), fill=ROLE_COLORS.get(role, ROLE_COLORS["tile"]),
                          attrib={"class": f"tile role-{role}", "data-name": t.name})
            for d, glue in t.sides().items():
                if glue.strength == 0 or d not in _SIDE_SEGMENTS:
                    continue
                (ax, ay), (bx, by) = _SIDE_SEGMENTS[d]
                ET.SubElement(g, "line", x1=str(x + ax * cell), y1=str(y + ay * cell),
                              x2=str(x + bx * cell), y2=str(y + by * cell), stroke="#000000",
                              attrib={"class": "glue", "data-glue": glue.label,
                                      "stroke-width": str(glue.strength)})
            if labels:
                text = ET.SubElement(g, "text", x=str(x + cell / 2), y=str(y + cell * 0.65),
                                     attrib={"font-size": str(max(6, cell // 4)),
                                             "text-anchor": "middle"})
                text.text = t.name[:6]
    return ET.tostring(svg, encoding="unicode")


def count_roles(svg: str) -> dict[str, int]:
    """Number of tile squares per role in an SVG produced by ``render_svg``."""
    root = ET.fromstring(svg)
    counts: dict[str, int] = {}
    for rect in root.iter("{http://www.w3.org/2000/svg}rect"):
        for cls in rect.get("class", "").split():
            if cls.startswith("role-"):
                counts[cls[5:]] = counts.get(cls[5:], 0) + 1
    return counts
