"""Realisation of the merged pair of figure-eights (catalog ``merge``).

The merged shape is what a nested pair (a negatively crossed eight inside a
lobe of a positively crossed one) becomes when the level passes the saddle
joining them: the two curves splice along a neck whose strands cross once.
The result is a single curve with three crossings and four bounded regions:
the two lobes of the inner eight (areas A1, A2, now independent), the outer
lobe not involved in the splice (area A3), and a derived hosting region
whose area balances the whole curve to zero signed area.

The construction below performs that splice on synthetic geometry: both
eights are built as lens chains, the inner one is squished into the hosting
lobe, both are cut open at their left extremes, and two tangent-matched
cubic connectors close the curve with a single neck crossing.  Amplitudes
are then iterated so the three named regions hit their target areas exactly
while the host amplitude restores zero signed area.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .arrangement import refresh_true_areas
from .diagram import PlanarPolyline, SliceDiagram
from .geometry import GeometryError, point_polygon_clearance

NECK_CUT_FRACTION = 40  # remove n//40 vertices around each left extreme


class MergeConstructionError(GeometryError):
    pass


def _bezier(p0, t0, p1, t1, samples: int = 26) -> np.ndarray:
    """Cubic from p0 to p1 with end tangents t0 (outgoing), t1 (incoming)."""
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    chord = float(np.hypot(*(p1 - p0)))
    c0 = p0 + 0.3 * chord * np.asarray(t0)
    c1 = p1 - 0.3 * chord * np.asarray(t1)
    u = np.linspace(0.0, 1.0, samples)[1:-1, None]
    return (
        (1 - u) ** 3 * p0
        + 3 * (1 - u) ** 2 * u * c0
        + 3 * (1 - u) * u**2 * c1
        + u**3 * p1
    )


def _chain(signs, lobes):
    from .catalog import _chain_diagram

    return _chain_diagram(signs, [Fraction(x).limit_denominator(10**12) for x in lobes])


def _open_at_left(comp: PlanarPolyline, k: int):
    """Drop k vertices on each side of the leftmost vertex; reindex to start there."""
    v = comp.vertices
    lift = comp.lift
    i0 = int(np.argmin(v[:, 0]))
    order = np.arange(len(v))
    order = np.roll(order, -i0)
    v = v[order]
    lift = lift[order]
    return v[k : len(v) - k], lift[k : len(v) - k]


def _tangent(pts: np.ndarray, end: str) -> np.ndarray:
    d = pts[1] - pts[0] if end == "start" else pts[-1] - pts[-2]
    return d / np.hypot(*d)


def _assemble(outer: SliceDiagram, inner: SliceDiagram, lift_amp: float = 1.0):
    n_out = len(outer.components[0].vertices)
    n_in = len(inner.components[0].vertices)
    ov, ol = _open_at_left(outer.components[0], max(4, n_out // NECK_CUT_FRACTION))
    iv, il = _open_at_left(inner.components[0], max(4, n_in // NECK_CUT_FRACTION))

    # Outer path runs O_up .. O_low, inner path I_up .. I_low; the two
    # connectors C1: O_low -> I_up and C2: I_low -> O_up cross once.
    c1 = _bezier(ov[-1], _tangent(ov, "end"), iv[0], _tangent(iv, "start"))
    c2 = _bezier(iv[-1], _tangent(iv, "end"), ov[0], _tangent(ov, "start"))

    def connector_lift(n, a, b, bump):
        # Constant offset over the whole connector: the neck crossing can
        # fall anywhere along it, and lifts only matter at crossings.
        return np.full(n, 0.5 * (a + b) + bump)

    l1 = connector_lift(len(c1), ol[-1], il[0], +lift_amp)
    l2 = connector_lift(len(c2), il[-1], ol[0], -lift_amp)
    verts = np.vstack([ov, c1, iv, c2])
    lifts = np.concatenate([ol, l1, il, l2])
    return PlanarPolyline(verts, lifts)


def _place_inner(inner: SliceDiagram, outer: SliceDiagram) -> SliceDiagram:
    from .catalog import _deep_interior_point, _squish

    host = min(
        (f for f in outer.arrangement.faces if f.bounded),
        key=lambda f: float(f.polygon[:, 0].min()),
    )
    w = float(host.polygon[:, 0].max() - host.polygon[:, 0].min())
    h = float(host.polygon[:, 1].max() - host.polygon[:, 1].min())
    outer_sq = _squish(outer, math.sqrt(h / w))
    host = min(
        (f for f in outer_sq.arrangement.faces if f.bounded),
        key=lambda f: float(f.polygon[:, 0].min()),
    )
    center, clearance = _deep_interior_point(host.polygon)
    side = 1.15 * clearance

    boxes = [c.bbox() for c in inner.components]
    iw = max(b[2] for b in boxes) - min(b[0] for b in boxes)
    ih = max(b[3] for b in boxes) - min(b[1] for b in boxes)
    if iw * ih > side * side:
        raise MergeConstructionError(
            "inner eight does not fit in the hosting lobe; host area too small"
        )
    inner_sq = _squish(inner, math.sqrt(side / iw * ih / side))
    boxes = [c.bbox() for c in inner_sq.components]
    cx = (min(b[0] for b in boxes) + max(b[2] for b in boxes)) / 2.0
    cy = (min(b[1] for b in boxes) + max(b[3] for b in boxes)) / 2.0
    shift = np.array([center[0] + 0.15 * side - cx, center[1] - cy])
    comp = inner_sq.components[0]
    moved = PlanarPolyline(comp.vertices + shift, comp.lift, comp.closed)
    return outer_sq, moved


def _faces_by_winding(diagram: SliceDiagram) -> dict[int, object]:
    from .geometry import winding_number

    out = {}
    curve = diagram.components[0].vertices
    for f in diagram.arrangement.faces:
        if not f.bounded:
            continue
        w = winding_number(curve, f.interior_point())
        if w in out:
            raise MergeConstructionError("merged regions have non-unique windings")
        out[w] = f
    return out


def realize_merge(areas: tuple[Fraction, Fraction, Fraction]) -> SliceDiagram:
    """Merged eights with inner lobes A1 (deep), A2 and outer lobe A3.

    The traversal winds -2 around A1, 0 around A2, +1 around A3 and -1
    around the derived hosting region, so zero total signed area forces the
    hosting region's area to A3 - 2*A1 exactly; that quantity must leave
    room for the spliced-in inner eight.
    """
    a1, a2, a3 = (Fraction(a) for a in areas)
    host_exact = a3 - 2 * a1
    targets = [float(a1), float(a2), float(a3)]
    fit_floor = 1.2 * (targets[0] + targets[1])
    if float(host_exact) <= fit_floor:
        raise MergeConstructionError(
            "merge needs A3 - 2*A1 comfortably larger than the inner fill "
            f"A1 + A2 (hosting region {float(host_exact):g} vs fill "
            f"{targets[0] + targets[1]:g})"
        )

    host_area = float(host_exact)
    h_scale = [1.0, 1.0]
    diagram = None
    plan = None
    for _ in range(30):
        inner = _chain([-1], [targets[0] * h_scale[0], targets[1] * h_scale[1]])
        outer = _chain([1], [host_area, targets[2]])
        outer_sq, inner_comp = _place_inner(inner, outer)
        merged = _assemble_from(outer_sq, inner_comp)
        try:
            diagram = SliceDiagram.build([merged], 1e-9)
        except GeometryError as exc:
            raise MergeConstructionError(f"merge splice degenerate: {exc}") from exc
        if len(diagram.crossings) != 3:
            raise MergeConstructionError(
                f"merge splice produced {len(diagram.crossings)} crossings"
            )
        faces = [f for f in diagram.arrangement.faces if f.bounded]
        if len(faces) != 4:
            raise MergeConstructionError(
                f"merge splice produced {len(faces)} bounded regions"
            )
        by_w = _faces_by_winding(diagram)
        if set(by_w) != {-2, -1, 0, 1}:
            raise MergeConstructionError(
                f"unexpected winding pattern {sorted(by_w)} in merge splice"
            )
        plan = [
            (by_w[-2], a1),
            (by_w[0], a2),
            (by_w[1], a3),
            (by_w[-1], host_exact),
        ]
        errs = [abs(float(f.area) - float(t)) / float(t) for f, t in plan]
        if max(errs) < 1e-11:
            break
        h_scale[0] *= targets[0] / float(by_w[-2].area)
        h_scale[1] *= targets[1] / float(by_w[0].area)
        host_area *= float(host_exact) / float(by_w[-1].area)
    else:
        raise MergeConstructionError("merge area iteration did not converge")

    for f, t in plan:
        f.area = t
    refresh_true_areas(diagram.arrangement)
    return diagram


def _assemble_from(outer_sq: SliceDiagram, inner_comp: PlanarPolyline):
    inner_as_diagram = SliceDiagram(
        components=(inner_comp,), crossings=(), tolerance=1e-9, arrangement=None
    )
    return _assemble(outer_sq, inner_as_diagram)
