"""Tutte barycentric drawings, written as SVG. For inspection only."""

from __future__ import annotations

import math

import numpy as np

from .embedding import Face, Polyhedron


def tutte_layout(g: Polyhedron, outer: Face | None = None) -> np.ndarray:
    """Pin ``outer`` (default: a largest face) to a regular polygon and place
    every other vertex at the mean of its neighbours."""
    if outer is None:
        outer = max(g.faces, key=lambda f: (len(f), -f.id))
    n = len(outer)
    pos = np.zeros((g.p, 2))
    pinned = set(outer.boundary)
    for k, v in enumerate(outer.boundary):
        angle = 2 * math.pi * k / n
        pos[v] = (math.cos(angle), math.sin(angle))
    free = [v for v in range(g.p) if v not in pinned]
    if not free:
        return pos
    index = {v: k for k, v in enumerate(free)}
    lap = np.zeros((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for v in free:
        a = index[v]
        lap[a, a] = g.rs.degree(v)
        for u in g.rs.rot[v]:
            if u in index:
                lap[a, index[u]] -= 1
            else:
                rhs[a] += pos[u]
    pos[free] = np.linalg.solve(lap, rhs)
    return pos


def to_svg(g: Polyhedron, size: int = 400, outer: Face | None = None, title: str = "") -> str:
    pos = tutte_layout(g, outer)
    margin = 20
    scale = (size - 2 * margin) / 2
    xy = (pos + 1) * scale + margin
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
    ]
    if title:
        lines.append(f"  <title>{title}</title>")
    lines.append('  <g stroke="#334155" stroke-width="1.5">')
    for a, b in g.rs.edges():
        lines.append(
            f'    <line x1="{xy[a, 0]:.2f}" y1="{xy[a, 1]:.2f}" x2="{xy[b, 0]:.2f}" y2="{xy[b, 1]:.2f}"/>'
        )
    lines.append("  </g>")
    lines.append('  <g fill="#f8fafc" stroke="#0f172a" font-size="9" text-anchor="middle">')
    for v in range(g.p):
        x, y = xy[v]
        lines.append(f'    <circle cx="{x:.2f}" cy="{y:.2f}" r="7"/>')
        lines.append(f'    <text x="{x:.2f}" y="{y + 3:.2f}" fill="#0f172a" stroke="none">{v}</text>')
    lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
