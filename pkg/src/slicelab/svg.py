"""SVG rendering of slice diagrams.

Closed curves as paths, a 3 px gap cut into the under strand at each
crossing, and region-area labels at face interior points.
"""

from __future__ import annotations

import numpy as np

from .diagram import SliceDiagram

VIEW = 640.0
PAD = 40.0
GAP_PX = 3.0

PALETTE = ("#1e66a8", "#b3412c", "#3d7a3a", "#7b4a9e", "#946c18")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_svg(diagram: SliceDiagram, label_areas: bool = True) -> str:
    """Standalone SVG document for a diagram."""
    if diagram.is_empty:
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW} {VIEW}">'
            f'<text x="{VIEW/2}" y="{VIEW/2}" text-anchor="middle" '
            f'font-family="sans-serif">empty slice</text></svg>'
        )

    boxes = [c.bbox() for c in diagram.components]
    x0 = min(b[0] for b in boxes)
    y0 = min(b[1] for b in boxes)
    x1 = max(b[2] for b in boxes)
    y1 = max(b[3] for b in boxes)
    span = max(x1 - x0, y1 - y0, 1e-12)
    scale = (VIEW - 2 * PAD) / span

    def to_px(pt):
        return (
            PAD + (pt[0] - x0) * scale,
            VIEW - PAD - (pt[1] - y0) * scale,  # y up
        )

    gap_world = GAP_PX / scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW} {VIEW}" '
        f'font-family="sans-serif">'
    ]

    for ci, comp in enumerate(diagram.components):
        colour = PALETTE[ci % len(PALETTE)]
        # Cut the under strand around each crossing it loses.
        cuts = []
        for crossing in diagram.crossings:
            under = 1 - crossing.over_strand
            strand = crossing.strands[under]
            if strand.component == ci:
                cuts.append(strand.param)
        v = comp.vertices
        n = comp.n_segments
        # Arc-length parameter window to skip near each cut.
        pieces = _split_params(comp, cuts, gap_world)
        for piece in pieces:
            pts = [to_px(comp.point_at(t)) for t in piece]
            d = "M " + " L ".join(f"{_fmt(px)} {_fmt(py)}" for px, py in pts)
            closed = len(pieces) == 1
            parts.append(
                f'<path d="{d}{" Z" if closed else ""}" fill="none" '
                f'stroke="{colour}" stroke-width="2"/>'
            )

    for crossing in diagram.crossings:
        px, py = to_px(crossing.point)
        badge = "+" if crossing.sign > 0 else "−"
        parts.append(
            f'<text x="{_fmt(px + 6)}" y="{_fmt(py - 6)}" font-size="13" '
            f'fill="#444">{badge}</text>'
        )

    if label_areas:
        for f in diagram.arrangement.faces:
            if not f.bounded:
                continue
            try:
                qx, qy = f.interior_point()
            except Exception:
                continue
            px, py = to_px((qx, qy))
            parts.append(
                f'<text x="{_fmt(px)}" y="{_fmt(py)}" font-size="12" fill="#666" '
                f'text-anchor="middle">{float(f.true_area):.4g}</text>'
            )

    parts.append("</svg>")
    return "".join(parts)


def _split_params(comp, cuts, gap_world):
    """Parameter runs covering the component minus gaps around the cuts."""
    n = comp.n_segments
    samples = max(4 * n, 256)
    ts = list(np.linspace(0.0, n, samples, endpoint=False))
    if not cuts:
        return [ts + [0.0]]

    def near_cut(t):
        pt = comp.point_at(t)
        for c in cuts:
            cp = comp.point_at(c)
            if np.hypot(pt[0] - cp[0], pt[1] - cp[1]) < gap_world:
                return True
        return False

    keep = [not near_cut(t) for t in ts]
    runs = []
    current = []
    for t, ok in zip(ts, keep):
        if ok:
            current.append(t)
        elif current:
            runs.append(current)
            current = []
    if current:
        if runs and keep[0]:
            runs[0] = current + runs[0]
        else:
            runs.append(current)
    return runs
