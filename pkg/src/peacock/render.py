"""SVG output and fan-in / fan-out segment identification.

Edges are drawn as polylines through their control points (endpoints
included), each stroked with its assigned color. The fans-only mode
grays out edge bodies and colors only the segments where an edge enters
or leaves a bundle, plus its endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bundling import BundleWeightMatrix, proximity_flags, required_run_length
from .model import EdgeCurve, GraphLayout, layout_extent

_GRAY = (0.7, 0.7, 0.7)


@dataclass(frozen=True)
class FanSegments:
    """Segment indices of edge i around its bundled run against edge j.

    Segment s joins control points s and s+1. `fan_in` is the segment
    ending at the run's first control point (absent when the run starts
    at the first control), `fan_out` the segment starting at the run's
    last control point (absent when the run reaches the end).
    """

    fan_in: int | None
    fan_out: int | None
    run_start: int
    run_end: int


def find_fan_segments(
    edge_i: EdgeCurve, edge_j: EdgeCurve, t: float, k_ij: int
) -> FanSegments:
    """Fan segments for the earliest qualifying run, extended maximally."""
    flags = proximity_flags(edge_i, edge_j, t)
    c = edge_i.n_controls
    start = None
    run = 0
    for r in range(c):
        run = run + 1 if flags[r] else 0
        if run >= k_ij:
            start = r - k_ij + 1
            break
    if start is None:
        raise ValueError(
            f"edges {edge_i.id} and {edge_j.id} are not bundled at t={t}, k={k_ij}"
        )
    # Walk back to the true beginning of the run, then forward to its end.
    while start > 0 and flags[start - 1]:
        start -= 1
    end = start
    while end + 1 < c and flags[end + 1]:
        end += 1
    return FanSegments(
        fan_in=start - 1 if start > 0 else None,
        fan_out=end if end < c - 1 else None,
        run_start=start,
        run_end=end,
    )


@dataclass(frozen=True)
class RenderOptions:
    stroke_width: float = 1.5
    opacity: float = 0.85
    show_nodes: bool = False
    fans_only: bool = False
    # Needed only for fans_only: the detection threshold and run fraction.
    t: float | None = None
    k_min: float | None = None
    weights: BundleWeightMatrix | None = field(default=None, compare=False)


def _hex(rgb) -> str:
    r, g, b = (max(0, min(255, round(float(c) * 255))) for c in rgb)
    return f"#{r:02x}{g:02x}{b:02x}"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _edge_points(e: EdgeCurve) -> list[tuple[float, float]]:
    pts = [(e.v1.x, e.v1.y)]
    pts += [(p.x, p.y) for p in e.controls]
    pts.append((e.v2.x, e.v2.y))
    return pts


def _polyline(points, color, width, opacity) -> str:
    d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in points)
    return (
        f'<path d="{d}" fill="none" stroke="{_hex(color)}" '
        f'stroke-width="{_fmt(width)}" stroke-opacity="{_fmt(opacity)}" '
        f'stroke-linecap="round" stroke-linejoin="round"/>'
    )


def _fan_elements(layout, colors, opts) -> list[str]:
    if opts.t is None or opts.k_min is None or opts.weights is None:
        raise ValueError("fans_only rendering needs t, k_min and the weight matrix")
    parts = []
    flagged = np.nonzero(opts.weights.bundled_flag)
    fans_per_edge: dict[int, set[int]] = {}
    for i, j in zip(*flagged):
        ei, ej = layout.edges[i], layout.edges[j]
        k_ij = required_run_length(ei.n_controls, ej.n_controls, opts.k_min)
        fs = find_fan_segments(ei, ej, opts.t, k_ij)
        segs = fans_per_edge.setdefault(int(i), set())
        if fs.fan_in is not None:
            segs.add(fs.fan_in)
        if fs.fan_out is not None:
            segs.add(fs.fan_out)
    for e in layout.edges:
        parts.append(_polyline(_edge_points(e), _GRAY, opts.stroke_width, opts.opacity))
    for e in layout.edges:
        color = colors[e.id]
        cpts = [(p.x, p.y) for p in e.controls]
        for s in sorted(fans_per_edge.get(e.id, ())):
            parts.append(
                _polyline(cpts[s : s + 2], color, opts.stroke_width * 1.5, 1.0)
            )
        for p in (e.v1, e.v2):
            parts.append(
                f'<circle cx="{_fmt(p.x)}" cy="{_fmt(p.y)}" '
                f'r="{_fmt(opts.stroke_width * 1.5)}" fill="{_hex(color)}"/>'
            )
    return parts


def render_svg(
    layout: GraphLayout, colors, opts: RenderOptions = RenderOptions()
) -> str:
    """Deterministic SVG document; one path per edge in id order."""
    colors = np.asarray(colors, dtype=float)
    if colors.shape != (layout.m, 3):
        raise ValueError(f"expected {layout.m} RGB triples, got shape {colors.shape}")

    min_x, min_y, max_x, max_y = layout.extent
    w, h = layout_extent(layout)
    pad = 0.05 * max(w, h, 1.0)
    view = (min_x - pad, min_y - pad, w + 2 * pad, h + 2 * pad)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(view[0])} {_fmt(view[1])} {_fmt(view[2])} {_fmt(view[3])}">',
    ]
    if opts.fans_only:
        parts += _fan_elements(layout, colors, opts)
    else:
        for e in layout.edges:
            parts.append(
                _polyline(_edge_points(e), colors[e.id], opts.stroke_width, opts.opacity)
            )
    if opts.show_nodes and layout.nodes:
        for nid, p in layout.nodes:
            parts.append(
                f'<circle cx="{_fmt(p.x)}" cy="{_fmt(p.y)}" '
                f'r="{_fmt(opts.stroke_width * 2)}" fill="#333333"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
