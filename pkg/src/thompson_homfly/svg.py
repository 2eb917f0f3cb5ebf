"""Decorative SVG pictures of tree pairs and link diagrams (layout is not normative)."""

from __future__ import annotations

import math

from .forest import GroupElement, Tree
from .tangles import Tangle


def _tree_lines(t: Tree, x0: float, x1: float, y: float, dy: float, out: list) -> tuple[float, float]:
    # returns the top point of this subtree; leaves sit on the line y = 0
    if t.is_leaf:
        x = (x0 + x1) / 2
        return x, 0.0
    mid = x0 + (x1 - x0) * t.left.leaves / t.leaves
    lx, ly = _tree_lines(t.left, x0, mid, y, dy, out)
    rx, ry = _tree_lines(t.right, mid, x1, y, dy, out)
    top = max(ly, ry) + dy
    x = (lx + rx) / 2
    out.append((x, top, lx, ly))
    out.append((x, top, rx, ry))
    return x, top


def tree_pair_svg(g: GroupElement, width: int = 400, height: int = 300) -> str:
    """Plus tree above the leaf line, minus tree reflected below it."""
    n = g.leaves
    mid = height / 2
    unit = width / (n + 1)
    dy = (height / 2 - 20) / max(1, n)
    parts = []
    for tree, sgn, colour in ((g.plus, -1, "#1f4e79"), (g.minus, 1, "#8b2d2d")):
        segs: list = []
        x, top = _tree_lines(tree, unit / 2, width - unit / 2, 0.0, dy, segs)
        for xa, ya, xb, yb in segs:
            parts.append(
                f'<line x1="{xa:.1f}" y1="{mid + sgn * ya:.1f}" x2="{xb:.1f}" '
                f'y2="{mid + sgn * yb:.1f}" stroke="{colour}" stroke-width="2"/>'
            )
    parts.append(f'<line x1="0" y1="{mid}" x2="{width}" y2="{mid}" stroke="#999" stroke-dasharray="4 4"/>')
    return _wrap(width, height, parts)


def diagram_svg(d: Tangle, size: int = 400) -> str:
    """Crossings on a circle joined by curves; a schematic, not a planar drawing."""
    n = max(1, d.crossings)
    cx = cy = size / 2
    rad = size / 2 - 40
    pos = {}
    for c in range(d.crossings):
        ang = 2 * math.pi * c / n
        pos[c] = (cx + rad * math.cos(ang), cy + rad * math.sin(ang))

    def port_xy(c: int, p: int) -> tuple[float, float]:
        x, y = pos[c]
        ang = math.pi / 4 + p * math.pi / 2
        return x + 10 * math.cos(ang), y - 10 * math.sin(ang)

    parts = []
    done = set()
    for s, u in sorted(d.adj.items()):
        if (u, s) in done or s[0] < 0 or u[0] < 0:
            continue
        done.add((s, u))
        x1, y1 = port_xy(*s)
        x2, y2 = port_xy(*u)
        parts.append(
            f'<path d="M {x1:.1f} {y1:.1f} Q {cx:.1f} {cy:.1f} {x2:.1f} {y2:.1f}" '
            f'fill="none" stroke="#333" stroke-width="1.5"/>'
        )
    for c, (x, y) in pos.items():
        colour = "#2a7" if d.signs[c] > 0 else "#c33" if d.signs[c] < 0 else "#777"
        parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="6" fill="{colour}"/>')
    for i in range(d.loops):
        parts.append(f'<circle cx="{20 + 18 * i}" cy="20" r="7" fill="none" stroke="#333"/>')
    return _wrap(size, size, parts)


def _wrap(w: float, h: float, parts: list[str]) -> str:
    body = "\n  ".join(parts)
    return f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">\n  {body}\n</svg>\n'
