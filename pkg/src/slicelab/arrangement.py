"""Planar arrangement of a diagram: arcs, faces, and their incidences.

Components are split at crossing passages into arcs; each crossing-connected
cluster of components is a 4-valent planar graph whose faces are traversed
from a half-edge structure.  Bounded faces come out with counterclockwise
boundary (positive area); the unique unbounded face of each cluster has
negative traversal area.  Clusters sitting inside a face of another cluster
are recorded so that true region areas (polygon minus contained material)
are available for equivalence keys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geometry import GeometryError, interior_point, point_in_polygon, signed_area


@dataclass
class Arc:
    """Piece of a component between two consecutive crossing passages."""

    index: int
    component: int
    start_passage: int  # index into Arrangement.passages
    end_passage: int
    chain: np.ndarray  # (m, 2) geometric points, endpoints at crossing points
    param_start: float
    param_end: float  # may exceed component param range by one period (wrap)

    @property
    def is_loop_component(self) -> bool:
        return self.start_passage < 0


@dataclass
class Passage:
    """One strand of one crossing, as seen from its component."""

    index: int
    component: int
    param: float
    crossing: int
    slot: int  # which strand of the crossing this is (0 or 1)


@dataclass
class Face:
    index: int
    cluster: int
    polygon: np.ndarray
    area: object  # float, or Fraction once a catalog realisation pins it
    bounded: bool
    boundary: tuple[tuple[int, int], ...]  # (arc index, direction) pairs
    contains_clusters: tuple[int, ...] = ()
    true_area: object = None

    def interior_point(self) -> tuple[float, float]:
        return interior_point(self.polygon)


@dataclass
class Arrangement:
    arcs: list[Arc]
    passages: list[Passage]
    faces: list[Face]
    cluster_of_component: dict[int, int]
    left_face: dict[tuple[int, int], int] = field(default_factory=dict)
    passages_by_component: dict[int, list[int]] = field(default_factory=dict)

    @staticmethod
    def build(components, crossings) -> "Arrangement":
        return _build_arrangement(components, crossings)

    def arcs_between(self, comp: int, param_a: float, param_b: float) -> list[tuple[int, int]]:
        """Directed arcs forming the forward path from passage at param_a to param_b."""
        order = self.passages_by_component[comp]
        params = [self.passages[i].param for i in order]
        ia = params.index(param_a)
        ib = params.index(param_b)
        arcs_of_comp = [a for a in self.arcs if a.component == comp and not a.is_loop_component]
        by_start = {a.start_passage: a for a in arcs_of_comp}
        out = []
        k = ia
        while True:
            p = order[k]
            arc = by_start[p]
            out.append((arc.index, +1))
            k = (k + 1) % len(order)
            if order[k] != self.passages[arc.end_passage].index:
                raise GeometryError("arc chain inconsistency")
            if k == ib:
                break
        return out

    def face_windings_of_loop(self, directed_arcs: Sequence[tuple[int, int]]) -> dict[int, int]:
        """Winding number of a closed arc path around every face of its cluster.

        Crossing a loop arc from its right face to its left face raises the
        winding by one; faces separated only by arcs off the loop share it.
        The unbounded face has winding zero.
        """
        if not directed_arcs:
            return {}
        cluster = self.arcs[directed_arcs[0][0]].component
        cluster = self.cluster_of_component[cluster]
        loop_step: dict[int, int] = {}
        for arc_idx, direction in directed_arcs:
            loop_step[arc_idx] = loop_step.get(arc_idx, 0) + direction
        faces = [f for f in self.faces if f.cluster == cluster]
        unbounded = next(f.index for f in faces if not f.bounded)
        winding = {unbounded: 0}
        frontier = [unbounded]
        adj: dict[int, list[tuple[int, int]]] = {f.index: [] for f in faces}
        for arc in self.arcs:
            if self.cluster_of_component[arc.component] != cluster or arc.is_loop_component:
                continue
            lf = self.left_face[(arc.index, +1)]
            rf = self.left_face[(arc.index, -1)]
            step = loop_step.get(arc.index, 0)
            adj[lf].append((rf, -step))
            adj[rf].append((lf, +step))
        while frontier:
            f = frontier.pop()
            for g, step in adj[f]:
                w = winding[f] + step
                if g in winding:
                    if winding[g] != w:
                        raise GeometryError("inconsistent face windings")
                else:
                    winding[g] = w
                    frontier.append(g)
        return winding


def _build_arrangement(components, crossings) -> Arrangement:
    n_comp = len(components)
    parent = list(range(n_comp))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    passages: list[Passage] = []
    for xi, c in enumerate(crossings):
        union(c.strands[0].component, c.strands[1].component)
        for slot in (0, 1):
            s = c.strands[slot]
            passages.append(Passage(len(passages), s.component, s.param, xi, slot))

    cluster_of_component = {i: find(i) for i in range(n_comp)}

    by_comp: dict[int, list[int]] = {}
    for p in passages:
        by_comp.setdefault(p.component, []).append(p.index)
    for comp, idxs in by_comp.items():
        idxs.sort(key=lambda i: passages[i].param)

    arcs: list[Arc] = []
    for ci in range(n_comp):
        comp = components[ci]
        idxs = by_comp.get(ci, [])
        if not idxs:
            arcs.append(
                Arc(
                    index=len(arcs),
                    component=ci,
                    start_passage=-1,
                    end_passage=-1,
                    chain=np.vstack([comp.vertices, comp.vertices[:1]]),
                    param_start=0.0,
                    param_end=float(comp.n_segments),
                )
            )
            continue
        n = comp.n_segments
        for k, pi in enumerate(idxs):
            pj = idxs[(k + 1) % len(idxs)]
            pa, pb = passages[pi].param, passages[pj].param
            pb_eff = pb if pb > pa else pb + n
            pts = [crossings[passages[pi].crossing].point]
            v = int(math.floor(pa)) + 1
            while v < pb_eff:
                pts.append(tuple(comp.vertices[v % len(comp.vertices)]))
                v += 1
            pts.append(crossings[passages[pj].crossing].point)
            chain = np.array(pts, dtype=float)
            keep = [0]
            for t in range(1, len(chain)):
                if np.hypot(*(chain[t] - chain[keep[-1]])) > 0.0:
                    keep.append(t)
            chain = chain[keep]
            arcs.append(
                Arc(
                    index=len(arcs),
                    component=ci,
                    start_passage=pi,
                    end_passage=pj,
                    chain=chain,
                    param_start=pa,
                    param_end=pb_eff,
                )
            )

    faces: list[Face] = []
    left_face: dict[tuple[int, int], int] = {}

    clusters = sorted({cluster_of_component[i] for i in range(n_comp)})
    for cl in clusters:
        cl_comps = [i for i in range(n_comp) if cluster_of_component[i] == cl]
        cl_arcs = [a for a in arcs if a.component in cl_comps]
        has_crossings = any(not a.is_loop_component for a in cl_arcs)
        if not has_crossings:
            # Embedded isolated component: one bounded face, one unbounded.
            arc = cl_arcs[0]
            poly = arc.chain[:-1]
            area_val = signed_area(poly)
            ccw = area_val > 0
            inner = Face(
                index=len(faces),
                cluster=cl,
                polygon=poly if ccw else poly[::-1],
                area=abs(area_val),
                bounded=True,
                boundary=((arc.index, +1 if ccw else -1),),
            )
            faces.append(inner)
            outer = Face(
                index=len(faces),
                cluster=cl,
                polygon=poly if not ccw else poly[::-1],
                area=-abs(area_val),
                bounded=False,
                boundary=((arc.index, -1 if ccw else +1),),
            )
            faces.append(outer)
            left_face[(arc.index, +1)] = inner.index if ccw else outer.index
            left_face[(arc.index, -1)] = outer.index if ccw else inner.index
            continue

        # Half-edge structure on the crossing vertices of this cluster.
        outgoing: dict[int, list[tuple[float, int, int]]] = {}
        for a in cl_arcs:
            if a.is_loop_component:
                raise GeometryError(
                    "component without crossings entangled in a crossing cluster"
                )
            sp, ep = passages[a.start_passage], passages[a.end_passage]
            d0 = a.chain[1] - a.chain[0]
            d1 = a.chain[-2] - a.chain[-1]
            outgoing.setdefault(sp.crossing, []).append(
                (math.atan2(d0[1], d0[0]), a.index, +1)
            )
            outgoing.setdefault(ep.crossing, []).append(
                (math.atan2(d1[1], d1[0]), a.index, -1)
            )
        for v in outgoing:
            outgoing[v].sort()
            if len(outgoing[v]) != 4:
                raise GeometryError("crossing vertex is not 4-valent")

        def dest_vertex(arc_idx: int, direction: int) -> int:
            a = arcs[arc_idx]
            p = a.end_passage if direction > 0 else a.start_passage
            return passages[p].crossing

        def next_halfedge(arc_idx: int, direction: int) -> tuple[int, int]:
            v = dest_vertex(arc_idx, direction)
            star = outgoing[v]
            twin = (arc_idx, -direction)
            pos = next(k for k, (_, ai, d) in enumerate(star) if (ai, d) == twin)
            _, ai, d = star[(pos - 1) % len(star)]
            return (ai, d)

        visited: set[tuple[int, int]] = set()
        for a in cl_arcs:
            for direction in (+1, -1):
                h0 = (a.index, direction)
                if h0 in visited:
                    continue
                cycle = []
                h = h0
                while True:
                    visited.add(h)
                    cycle.append(h)
                    h = next_halfedge(*h)
                    if h == h0:
                        break
                pts = []
                for ai, d in cycle:
                    chain = arcs[ai].chain if d > 0 else arcs[ai].chain[::-1]
                    pts.append(chain[:-1])
                poly = np.vstack(pts)
                area_val = signed_area(poly)
                f = Face(
                    index=len(faces),
                    cluster=cl,
                    polygon=poly,
                    area=area_val,
                    bounded=area_val > 0,
                    boundary=tuple(cycle),
                )
                faces.append(f)
                for h in cycle:
                    left_face[h] = f.index

        negs = [f for f in faces if f.cluster == cl and not f.bounded]
        if len(negs) != 1:
            raise GeometryError(
                f"cluster has {len(negs)} unbounded faces; arrangement inconsistent"
            )

    # Absolute areas for bounded faces.
    for f in faces:
        if f.bounded:
            f.area = abs(float(f.area))

    _assign_containment(faces, clusters, cluster_of_component, components)
    return Arrangement(
        arcs=arcs,
        passages=passages,
        faces=faces,
        cluster_of_component=cluster_of_component,
        left_face=left_face,
        passages_by_component=by_comp,
    )


def _assign_containment(faces, clusters, cluster_of_component, components):
    """Nest clusters into faces of other clusters and set true areas."""
    rep_point: dict[int, tuple[float, float]] = {}
    fill: dict[int, float] = {}
    for cl in clusters:
        ci = next(i for i in cluster_of_component if cluster_of_component[i] == cl)
        rep_point[cl] = tuple(components[ci].vertices[0])
        fill[cl] = sum(float(f.area) for f in faces if f.cluster == cl and f.bounded)

    parent_face: dict[int, int | None] = {}
    for cl in clusters:
        best = None
        best_area = math.inf
        for f in faces:
            if f.cluster == cl or not f.bounded:
                continue
            if point_in_polygon(f.polygon, rep_point[cl]) and float(f.area) < best_area:
                best = f.index
                best_area = float(f.area)
        parent_face[cl] = best

    for f in faces:
        kids = tuple(cl for cl in clusters if parent_face[cl] == f.index)
        f.contains_clusters = kids
        if f.bounded:
            removed = sum(fill[cl] for cl in kids)
            if isinstance(f.area, Fraction):
                f.true_area = f.area - Fraction(removed)
            else:
                f.true_area = float(f.area) - removed
        else:
            f.true_area = f.area


def refresh_true_areas(arrangement: Arrangement) -> None:
    """Recompute true areas after catalog code replaces face areas exactly."""
    fill: dict[int, object] = {}
    for f in arrangement.faces:
        if f.bounded:
            fill[f.cluster] = fill.get(f.cluster, 0) + f.area
    for f in arrangement.faces:
        if f.bounded:
            removed = sum((fill[cl] for cl in f.contains_clusters), start=Fraction(0))
            if not f.contains_clusters:
                f.true_area = f.area
            elif isinstance(f.area, Fraction) and isinstance(removed, Fraction):
                f.true_area = f.area - removed
            else:
                f.true_area = float(f.area) - float(removed)
