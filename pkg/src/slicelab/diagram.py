"""Slice diagrams: lifted immersed closed curves with crossing data.

A diagram is a union of closed polylines in the x1y1-plane, each carrying an
x2 "lift" value per vertex.  Crossings are the transverse double points of
the union; at each one the lift decides the over strand, and the crossing
sign is the sign of det[t_over, t_under] of the strand tangents (convention
fixed so the positive figure-eight of the catalog gets sign +1).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .geometry import (
    GeometryError,
    segment_intersection,
    signed_area,
    turning_number,
)


class DegeneracyError(GeometryError):
    """Tangency, triple point, or equal-lift crossing: diagram not generic."""


@dataclass(frozen=True)
class PlanarPolyline:
    """Closed polyline with an optional per-vertex lift.

    ``vertices`` has shape (n, 2); the closing edge back to vertex 0 is
    implied.  ``lift`` (shape (n,)) gives the height of the strand over each
    vertex and is interpolated linearly along edges.  ``tangents`` optionally
    records exact unit tangent directions at the vertices (traversal
    orientation); curve tracers that know the underlying field supply them
    so that turning counts are free of sampling noise.
    """

    vertices: np.ndarray
    lift: np.ndarray | None = None
    closed: bool = True
    tangents: np.ndarray | None = None

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        object.__setattr__(self, "vertices", v)
        if self.closed and len(v) < 3:
            raise GeometryError("closed polyline needs at least 3 vertices")
        d = np.diff(np.vstack([v, v[:1]]) if self.closed else v, axis=0)
        if np.any((d[:, 0] == 0.0) & (d[:, 1] == 0.0)):
            raise GeometryError("repeated consecutive vertices")
        if self.lift is not None:
            lf = np.asarray(self.lift, dtype=float)
            if lf.shape != (len(v),):
                raise GeometryError("lift must have one entry per vertex")
            object.__setattr__(self, "lift", lf)
        if self.tangents is not None:
            tg = np.asarray(self.tangents, dtype=float)
            if tg.shape != v.shape:
                raise GeometryError("tangents must have one entry per vertex")
            norms = np.hypot(tg[:, 0], tg[:, 1])
            if np.any(norms == 0.0):
                raise GeometryError("zero tangent vector")
            object.__setattr__(self, "tangents", tg / norms[:, None])

    @property
    def n_segments(self) -> int:
        return len(self.vertices) if self.closed else len(self.vertices) - 1

    def point_at(self, param: float) -> np.ndarray:
        seg = int(param) % self.n_segments
        t = param - int(param)
        a = self.vertices[seg]
        b = self.vertices[(seg + 1) % len(self.vertices)]
        return a + t * (b - a)

    def lift_at(self, param: float) -> float:
        if self.lift is None:
            raise GeometryError("polyline has no lift")
        seg = int(param) % self.n_segments
        t = param - int(param)
        a = self.lift[seg]
        b = self.lift[(seg + 1) % len(self.lift)]
        return float(a + t * (b - a))

    def tangent_at(self, param: float) -> np.ndarray:
        seg = int(param) % self.n_segments
        a = self.vertices[seg]
        b = self.vertices[(seg + 1) % len(self.vertices)]
        d = b - a
        return d / np.hypot(*d)

    def exact_tangent_at(self, param: float) -> np.ndarray | None:
        """Angle-interpolated recorded tangent, when the curve carries them."""
        if self.tangents is None:
            return None
        seg = int(param) % self.n_segments
        t = param - int(param)
        ta = self.tangents[seg]
        tb = self.tangents[(seg + 1) % len(self.tangents)]
        a0 = math.atan2(ta[1], ta[0])
        a1 = math.atan2(tb[1], tb[0])
        a1 = a1 - round((a1 - a0) / (2.0 * math.pi)) * 2.0 * math.pi
        ang = a0 + t * (a1 - a0)
        return np.array([math.cos(ang), math.sin(ang)])

    def signed_area(self) -> float:
        if not self.closed:
            raise GeometryError("open polyline has no enclosed area")
        return signed_area(self.vertices)

    def turning(self) -> float:
        return turning_number(self.vertices)

    def bbox(self) -> tuple[float, float, float, float]:
        v = self.vertices
        return (
            float(v[:, 0].min()),
            float(v[:, 1].min()),
            float(v[:, 0].max()),
            float(v[:, 1].max()),
        )


@dataclass(frozen=True)
class Strand:
    """One passage of a component through a crossing."""

    component: int
    param: float  # segment index + fractional position


@dataclass(frozen=True)
class Crossing:
    point: tuple[float, float]
    strands: tuple[Strand, Strand]
    over_strand: int  # index into strands of the strand with larger lift
    sign: int
    lifts: tuple[float, float]

    @property
    def is_self(self) -> bool:
        return self.strands[0].component == self.strands[1].component


def _segment_table(components: Sequence[PlanarPolyline]):
    rows = []
    for ci, comp in enumerate(components):
        v = comp.vertices
        n = comp.n_segments
        for si in range(n):
            a = v[si]
            b = v[(si + 1) % len(v)]
            rows.append((ci, si, a[0], a[1], b[0], b[1]))
    return rows


def detect_crossings(
    components: Sequence[PlanarPolyline],
    tolerance: float = 1e-9,
    min_self_param_gap: float = 1.5,
) -> list[Crossing]:
    """All transverse double points of the component union.

    ``min_self_param_gap`` (in segment units) suppresses intersections of
    parametrically adjacent pieces of one component; contour tracers use a
    larger gap to drop discretisation noise.  Tangencies, triple points and
    equal-lift crossings raise :class:`DegeneracyError`.
    """
    segs = _segment_table(components)
    if not segs:
        return []
    arr = np.array([row[2:] for row in segs], dtype=float)
    x0 = np.minimum(arr[:, 0], arr[:, 2])
    x1 = np.maximum(arr[:, 0], arr[:, 2])
    y0 = np.minimum(arr[:, 1], arr[:, 3])
    y1 = np.maximum(arr[:, 1], arr[:, 3])
    scale = max(x1.max() - x0.min(), y1.max() - y0.min(), 1e-300)
    prox = tolerance * scale

    hits: list[tuple[int, int, float, float]] = []
    n = len(segs)
    # Bounding-box prefilter, vectorised per segment against later ones.
    for i in range(n - 1):
        ci, si = segs[i][0], segs[i][1]
        j0 = i + 1
        cand = np.nonzero(
            (x0[j0:] <= x1[i]) & (x1[j0:] >= x0[i]) & (y0[j0:] <= y1[i]) & (y1[j0:] >= y0[i])
        )[0]
        for off in cand:
            j = j0 + off
            cj, sj = segs[j][0], segs[j][1]
            if ci == cj:
                nseg = components[ci].n_segments
                gap = min((sj - si) % nseg, (si - sj) % nseg)
                if gap < min_self_param_gap:
                    continue
            p0 = arr[i, 0:2]
            p1 = arr[i, 2:4]
            q0 = arr[j, 0:2]
            q1 = arr[j, 2:4]
            try:
                res = segment_intersection(p0, p1, q0, q1)
            except GeometryError as exc:
                raise DegeneracyError(str(exc), exc.point) from exc
            if res is None:
                continue
            hits.append((i, j, res[0], res[1]))

    crossings: list[Crossing] = []
    pts: list[np.ndarray] = []
    for i, j, u, w in hits:
        ci, si = segs[i][0], segs[i][1]
        cj, sj = segs[j][0], segs[j][1]
        point = arr[i, 0:2] + u * (arr[i, 2:4] - arr[i, 0:2])
        for p in pts:
            if np.hypot(*(p - point)) <= prox:
                raise DegeneracyError("triple point or tangency", tuple(point))
        pts.append(point)
        s_a = Strand(ci, si + u)
        s_b = Strand(cj, sj + w)
        la = components[ci].lift_at(s_a.param)
        lb = components[cj].lift_at(s_b.param)
        if abs(la - lb) <= tolerance * max(1.0, abs(la), abs(lb)):
            raise DegeneracyError("strands share lift value at crossing", tuple(point))
        over = 0 if la > lb else 1
        strands = (s_a, s_b)
        t_over = components[strands[over].component].tangent_at(strands[over].param)
        t_under = components[strands[1 - over].component].tangent_at(strands[1 - over].param)
        det = t_over[0] * t_under[1] - t_over[1] * t_under[0]
        crossings.append(
            Crossing(
                point=(float(point[0]), float(point[1])),
                strands=strands,
                over_strand=over,
                sign=1 if det > 0 else -1,
                lifts=(la, lb),
            )
        )
    crossings.sort(key=lambda c: (c.strands[0].component, c.strands[0].param))
    return crossings


@dataclass(frozen=True)
class ValidityEntry:
    area_ok: bool
    winding_ok: bool
    area_residual: float
    winding_residual: float


@dataclass
class SliceDiagram:
    """Immutable-by-convention bundle of components, crossings and faces."""

    components: tuple[PlanarPolyline, ...]
    crossings: tuple[Crossing, ...]
    tolerance: float
    arrangement: "Arrangement" = field(repr=False, default=None)
    catalog_label: str | None = None

    @staticmethod
    def build(
        components: Iterable[PlanarPolyline],
        tolerance: float = 1e-9,
        min_self_param_gap: float = 1.5,
        catalog_label: str | None = None,
    ) -> "SliceDiagram":
        from .arrangement import Arrangement

        comps = tuple(components)
        crossings = tuple(detect_crossings(comps, tolerance, min_self_param_gap))
        arr = Arrangement.build(comps, crossings)
        return SliceDiagram(comps, crossings, tolerance, arr, catalog_label)

    @property
    def is_empty(self) -> bool:
        return len(self.components) == 0

    def scale(self) -> float:
        if self.is_empty:
            return 1.0
        boxes = [c.bbox() for c in self.components]
        x0 = min(b[0] for b in boxes)
        y0 = min(b[1] for b in boxes)
        x1 = max(b[2] for b in boxes)
        y1 = max(b[3] for b in boxes)
        return max(x1 - x0, y1 - y0, 1e-300)

    def validity_report(self) -> list[ValidityEntry]:
        """Per-component zero-area and zero-turning checks with residuals."""
        out = []
        area_scale = max(
            (abs(float(f.area)) for f in self.arrangement.faces), default=1.0
        )
        for comp in self.components:
            a = comp.signed_area()
            t = comp.turning()
            out.append(
                ValidityEntry(
                    area_ok=abs(a) <= self.tolerance * max(1.0, area_scale),
                    winding_ok=abs(t) <= max(0.05, self.tolerance),
                    area_residual=abs(a),
                    winding_residual=abs(t),
                )
            )
        return out

    def is_valid(self) -> bool:
        return all(e.area_ok and e.winding_ok for e in self.validity_report())

    def to_json_dict(self) -> dict:
        comps = []
        for c in self.components:
            entry = {
                "vertices": [[float(x), float(y)] for x, y in c.vertices],
                "closed": bool(c.closed),
            }
            if c.lift is not None:
                entry["lift"] = [float(v) for v in c.lift]
            comps.append(entry)
        return {"components": comps, "tolerance": float(self.tolerance)}

    def digest(self) -> str:
        payload = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()[:16]


EMPTY_DIAGRAM = SliceDiagram(components=(), crossings=(), tolerance=1e-9, arrangement=None)


def diagram_from_json_dict(data: dict) -> SliceDiagram:
    comps = []
    for entry in data.get("components", []):
        comps.append(
            PlanarPolyline(
                vertices=np.array(entry["vertices"], dtype=float),
                lift=np.array(entry["lift"], dtype=float) if "lift" in entry else None,
                closed=bool(entry.get("closed", True)),
            )
        )
    tol = float(data.get("tolerance", 1e-9))
    if not comps:
        return EMPTY_DIAGRAM
    return SliceDiagram.build(comps, tol)


def transform_diagram(diagram: SliceDiagram, matrix: np.ndarray, offset=(0.0, 0.0)) -> SliceDiagram:
    """Apply an affine map to the plane; lifts ride along unchanged."""
    if diagram.is_empty:
        return diagram
    m = np.asarray(matrix, dtype=float)
    comps = [
        PlanarPolyline(
            c.vertices @ m.T + np.asarray(offset),
            c.lift,
            c.closed,
            None if c.tangents is None else c.tangents @ m.T,
        )
        for c in diagram.components
    ]
    return SliceDiagram.build(comps, diagram.tolerance, catalog_label=diagram.catalog_label)


def translate_diagram(diagram: SliceDiagram, dx: float, dy: float = 0.0) -> SliceDiagram:
    return transform_diagram(diagram, np.eye(2), (dx, dy))


def sum_diagrams(d1: SliceDiagram, d2: SliceDiagram) -> SliceDiagram:
    """Monoid sum: d1 moved into {x1 < 0}, d2 into {x1 > 0}, disjoint union."""
    if d1.is_empty:
        return d2
    if d2.is_empty:
        return d1
    margin1 = 0.1 * d1.scale()
    margin2 = 0.1 * d2.scale()
    x1max = max(c.bbox()[2] for c in d1.components)
    x2min = min(c.bbox()[0] for c in d2.components)
    comps = [
        PlanarPolyline(c.vertices + np.array([-(x1max + margin1), 0.0]), c.lift, c.closed)
        for c in d1.components
    ]
    comps += [
        PlanarPolyline(c.vertices + np.array([-(x2min - margin2), 0.0]), c.lift, c.closed)
        for c in d2.components
    ]
    tol = min(d1.tolerance, d2.tolerance)
    label = None
    if d1.catalog_label and d2.catalog_label:
        label = f"{d1.catalog_label} + {d2.catalog_label}"
    out = SliceDiagram.build(comps, tol, catalog_label=label)
    _carry_exact_areas(out, list(d1.arrangement.faces) + list(d2.arrangement.faces))
    return out


def _carry_exact_areas(diagram: SliceDiagram, donor_faces) -> None:
    """Re-attach exact area labels after a rigid motion, matched by value."""
    exact = [f.area for f in donor_faces if isinstance(f.area, Fraction)]
    if not exact:
        return
    remaining = list(exact)
    for f in diagram.arrangement.faces:
        best = None
        for q in remaining:
            if abs(float(q) - float(f.area)) <= 1e-6 * max(1.0, abs(float(f.area))):
                best = q
                break
        if best is not None:
            remaining.remove(best)
            f.area = best
