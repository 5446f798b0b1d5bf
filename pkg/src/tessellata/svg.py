"""SVG renderers: piano roll, tiling outlines, coverage strip chart.

Exact values are converted to floats here and nowhere else.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from fractions import Fraction
from typing import Mapping, Sequence

from .geometry import BoundaryPolygon, SegmentKind, classify_edges
from .score import Score

SVG_NS = "http://www.w3.org/2000/svg"

VOICE_COLORS = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)
KIND_COLORS = {
    SegmentKind.HALF_SIDE: "#d62728",
    SegmentKind.FULL_SIDE: "#9467bd",
    SegmentKind.APOTHEM: "#1f77b4",
    SegmentKind.DOUBLE_APOTHEM: "#2ca02c",
}


def _fmt(x: float) -> str:
    text = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _svg(width: float, height: float) -> ET.Element:
    return ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "width": _fmt(width),
            "height": _fmt(height),
            "viewBox": f"0 0 {_fmt(width)} {_fmt(height)}",
        },
    )


def _to_bytes(root: ET.Element) -> str:
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


def render_piano_roll(
    score: Score,
    beat_width: float = 40.0,
    row_height: float = 6.0,
    colors: Mapping[str, str] | None = None,
) -> str:
    """One rect per pitched event on a quarter-tone grid, coloured by voice."""
    margin = 30.0
    pitched = [e for e in score.events if e.pitch is not None]
    voices = score.voices
    palette = dict(colors or {})
    for i, v in enumerate(voices):
        palette.setdefault(v, VOICE_COLORS[i % len(VOICE_COLORS)])

    if pitched:
        lo = min(e.pitch for e in pitched)
        hi = max(e.pitch for e in pitched)
    else:
        lo = hi = 0
    rows = hi - lo + 1
    span = float(score.end) if score.events else 0.0
    width = 2 * margin + span * beat_width
    height = 2 * margin + rows * row_height
    root = _svg(width, height)
    ET.SubElement(root, "title").text = score.title or "piano roll"

    axes = ET.SubElement(root, "g", {"class": "axes", "stroke": "#999", "stroke-width": "1"})
    base_y = margin + rows * row_height
    ET.SubElement(axes, "line", {"x1": _fmt(margin), "y1": _fmt(base_y),
                                 "x2": _fmt(width - margin), "y2": _fmt(base_y)})
    ET.SubElement(axes, "line", {"x1": _fmt(margin), "y1": _fmt(margin),
                                 "x2": _fmt(margin), "y2": _fmt(base_y)})
    for beat in range(int(span) + 1):
        x = margin + beat * beat_width
        ET.SubElement(axes, "line", {"x1": _fmt(x), "y1": _fmt(base_y),
                                     "x2": _fmt(x), "y2": _fmt(base_y + 4)})

    notes = ET.SubElement(root, "g", {"class": "notes"})
    for e in pitched:
        x = margin + float(e.onset) * beat_width
        y = margin + (hi - e.pitch) * row_height
        ET.SubElement(notes, "rect", {
            "x": _fmt(x), "y": _fmt(y),
            "width": _fmt(float(e.duration) * beat_width), "height": _fmt(row_height),
            "fill": palette[e.voice], "data-voice": e.voice,
            "data-pitch": str(Fraction(e.pitch, 2)),
        })

    legend = ET.SubElement(root, "g", {"class": "legend", "font-size": "10"})
    for i, v in enumerate(voices):
        t = ET.SubElement(legend, "text", {"x": _fmt(margin + 80 * i), "y": _fmt(margin - 10),
                                           "fill": palette[v]})
        t.text = v
    return _to_bytes(root)


def _bbox(polygons: Sequence[BoundaryPolygon]):
    xs, ys = [], []
    for p in polygons:
        for v in p.vertices:
            x, y = v.to_float()
            xs.append(x)
            ys.append(y)
    return min(xs), min(ys), max(xs), max(ys)


def render_tiling(
    polygons: Sequence[BoundaryPolygon],
    background: Sequence[BoundaryPolygon] = (),
    unit: float = 40.0,
) -> str:
    """Outlines in the plane, y pointing up.

    ``background`` polygons (e.g. the hexagons) are drawn first as grey paths.
    Each polygon in ``polygons`` gets a path plus one line per edge coloured
    by its segment kind.
    """
    margin = 20.0
    everything = list(background) + list(polygons)
    if not everything:
        root = _svg(2 * margin, 2 * margin)
        return _to_bytes(root)
    x0, y0, x1, y1 = _bbox(everything)
    width = 2 * margin + (x1 - x0) * unit
    height = 2 * margin + (y1 - y0) * unit
    root = _svg(width, height)

    def project(v):
        x, y = v.to_float()
        return margin + (x - x0) * unit, margin + (y1 - y) * unit

    def path_d(p):
        pts = [project(v) for v in p.vertices]
        head = f"M {_fmt(pts[0][0])} {_fmt(pts[0][1])}"
        rest = " ".join(f"L {_fmt(x)} {_fmt(y)}" for x, y in pts[1:])
        return f"{head} {rest} Z"

    under = ET.SubElement(root, "g", {"class": "background"})
    for p in background:
        ET.SubElement(under, "path", {"d": path_d(p), "fill": "#f2f2f2", "stroke": "#aaa",
                                      "stroke-width": "1"})
    for i, p in enumerate(polygons):
        g = ET.SubElement(root, "g", {"class": "figure"})
        ET.SubElement(g, "path", {"d": path_d(p), "fill": "#fde9b5", "fill-opacity": "0.7",
                                  "stroke": "none"})
        edges = ET.SubElement(g, "g", {"class": "edges", "stroke-width": "3"})
        for (a, b), kind in zip(p.edges(), classify_edges(p)):
            (ax, ay), (bx, by) = project(a), project(b)
            ET.SubElement(edges, "line", {
                "x1": _fmt(ax), "y1": _fmt(ay), "x2": _fmt(bx), "y2": _fmt(by),
                "stroke": KIND_COLORS[kind], "data-kind": kind.value,
            })
    return _to_bytes(root)


def render_coverage(entries, unit: float = 40.0, lane: float = 14.0) -> str:
    """Strip chart: one bar per entry and the step curve of the coverage count."""
    from .timeline import breakpoints, coverage_count

    margin = 30.0
    instruments = list(dict.fromkeys(e.instrument for e in entries))
    pts = breakpoints(entries)
    span = float(pts[-1]) if pts else 0.0
    peak = max((coverage_count(entries, t) for t in pts), default=0)
    curve_h = max(peak, 1) * lane
    width = 2 * margin + span * unit
    height = 3 * margin + len(instruments) * lane + curve_h
    root = _svg(width, height)
    bars = ET.SubElement(root, "g", {"class": "entries"})
    for e in entries:
        row = instruments.index(e.instrument)
        color = VOICE_COLORS[row % len(VOICE_COLORS)]
        ET.SubElement(bars, "rect", {
            "x": _fmt(margin + float(e.start) * unit), "y": _fmt(margin + row * lane),
            "width": _fmt(float(e.duration) * unit), "height": _fmt(lane - 2),
            "fill": color, "fill-opacity": "0.6", "data-motif": e.motif,
        })
    base = 2 * margin + len(instruments) * lane + curve_h
    d = []
    for lo, hi in zip(pts, pts[1:]):
        # value on the open interval; breakpoints themselves may be higher
        c = coverage_count(entries, (lo + hi) / 2)
        y = base - c * lane
        d.append(f"M {_fmt(margin + float(lo) * unit)} {_fmt(y)} H {_fmt(margin + float(hi) * unit)}")
    if d:
        ET.SubElement(root, "path", {"class": "coverage", "d": " ".join(d), "stroke": "#000",
                                     "fill": "none", "stroke-width": "2"})
    for t in pts:
        c = coverage_count(entries, t)
        ET.SubElement(root, "circle", {"cx": _fmt(margin + float(t) * unit),
                                       "cy": _fmt(base - c * lane), "r": "2.5"})
    return _to_bytes(root)
