"""Numerical slicing of generating-family graphs and level sweeps.

A slice at height a < 0 is the level set {dF/dx2 = a} pushed through the
map (x1, x2) -> (x1, dF/dx1) with the x2 coordinate kept as the lift.
Levels too close to a critical value of dF/dx2, and extractions whose image
diagrams are degenerate, raise :class:`NonGenericLevel`; sweeps record and
skip them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classify import Classification, classify
from .contour import DEFAULT_GRID, BoundaryContact, Grid, marching_squares
from .diagram import DegeneracyError, PlanarPolyline, SliceDiagram
from .families import GeneratingFamily
from .geometry import GeometryError

SELF_GAP_CELLS = 4.0


class NonGenericLevel(ValueError):
    pass


_CRIT_CACHE: dict = {}


def _height_critical_points(family: GeneratingFamily, grid: Grid):
    """Critical points of dF/dx2: (point, value, Hessian scale) triples.

    Grid cells where both components of grad(dF/dx2) change sign seed a
    Newton iteration driven by the third partials.  The flat exterior
    plateau (value 0) is not listed; callers already require a < 0 and the
    boundary-contact check covers levels creeping up to it.
    """
    key = (family.digest(), grid)
    cached = _CRIT_CACHE.get(key)
    if cached is not None:
        return cached
    xs, ys = grid.xs, grid.ys
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    _, f12, f22 = family.second_partials(gx, gy)

    def sign_change(arr):
        pos = arr > 0
        neg = arr < 0
        return (
            (pos[:-1, :-1] | pos[1:, :-1] | pos[:-1, 1:] | pos[1:, 1:])
            & (neg[:-1, :-1] | neg[1:, :-1] | neg[:-1, 1:] | neg[1:, 1:])
        )

    cand = np.argwhere(sign_change(f12) & sign_change(f22))
    found: list[tuple[tuple[float, float], float, float]] = []
    for i, j in cand:
        x = 0.5 * (xs[i] + xs[i + 1])
        y = 0.5 * (ys[j] + ys[j + 1])
        ok = False
        for _ in range(40):
            _, g1, g2 = family.second_partials(x, y)
            h11, h12, h22 = family.third_partials_of_height(x, y)
            det = h11 * h22 - h12 * h12
            if abs(det) < 1e-30:
                break
            dx = (g1 * h22 - g2 * h12) / det
            dy = (g2 * h11 - g1 * h12) / det
            x, y = x - dx, y - dy
            if abs(dx) + abs(dy) < 1e-13:
                ok = True
                break
        if not ok:
            continue
        _, g1, g2 = family.second_partials(x, y)
        if math.hypot(float(g1), float(g2)) > 1e-9:
            continue
        value = float(family.partials(x, y)[1])
        if abs(value) < 1e-12:
            continue  # flat-plateau artefacts
        h11, h12, h22 = family.third_partials_of_height(x, y)
        eigs = np.linalg.eigvalsh(
            np.array([[float(h11), float(h12)], [float(h12), float(h22)]])
        )
        hscale = float(np.abs(eigs).max())
        if any(
            math.hypot(px - x, py - y) < 4.0 * grid.cell_diagonal
            for (px, py), _, _ in found
        ):
            continue
        found.append(((float(x), float(y)), value, hscale))
    _CRIT_CACHE[key] = found
    return found


@dataclass(frozen=True)
class SliceResult:
    level: float
    domain_loops: tuple[np.ndarray, ...]
    diagram: SliceDiagram
    classification: Classification
    grid: Grid
    tolerance: float

    @property
    def is_empty(self) -> bool:
        return len(self.domain_loops) == 0

    def summary(self) -> dict:
        return {
            "level": self.level,
            "components": len(self.diagram.components),
            "crossings": len(self.diagram.crossings),
            "classification": self.classification.label,
            "family": self.classification.family,
        }

    def to_json_dict(self) -> dict:
        from .api import render_payload

        valid = self.diagram.validity_report() if not self.is_empty else []
        out = {
            "level": self.level,
            "classification": {
                "label": self.classification.label,
                "family": self.classification.family,
                "areas": list(self.classification.areas),
            },
            "validity": [
                {
                    "area_ok": e.area_ok,
                    "winding_ok": e.winding_ok,
                    "area_residual": e.area_residual,
                    "winding_residual": e.winding_residual,
                }
                for e in valid
            ],
            "grid": {"nx": self.grid.nx, "ny": self.grid.ny},
            "tolerance": self.tolerance,
        }
        out.update(render_payload(self.diagram))
        return out


def _image_components(family: GeneratingFamily, loops) -> list[PlanarPolyline]:
    comps = []
    for loop in loops:
        x1 = loop[:, 0]
        x2 = loop[:, 1]
        y1, _ = family.partials(x1, x2)
        pts = np.column_stack([x1, y1])
        keep = [0]
        for i in range(1, len(pts)):
            if np.hypot(*(pts[i] - pts[keep[-1]])) > 1e-12:
                keep.append(i)
        while len(keep) > 1 and np.hypot(*(pts[keep[-1]] - pts[keep[0]])) <= 1e-12:
            keep.pop()
        if len(keep) < 3:
            continue
        kept = np.array(keep)
        # Exact image tangents: the contour is normal to grad(dF/dx2), and
        # the slice map sends the domain direction (u, v) to (u, F11 u +
        # F12 v).  Chord directions degrade where the map compresses steps;
        # these do not.
        f11, f12, f22 = family.second_partials(x1[kept], x2[kept])
        t_dom = np.column_stack([-f22, f12])
        t_img = np.column_stack([t_dom[:, 0], f11 * t_dom[:, 0] + f12 * t_dom[:, 1]])
        chords = np.diff(pts[kept], axis=0)
        j = int(np.argmax(np.hypot(chords[:, 0], chords[:, 1])))
        orient = float(np.dot(t_img[j], chords[j]))
        if orient == 0.0:
            raise NonGenericLevel("degenerate image tangent along the contour")
        if orient < 0:
            t_img = -t_img
        comps.append(PlanarPolyline(pts[kept], lift=x2[kept], tangents=t_img))
    return comps


def extract_slice(
    family: GeneratingFamily,
    a: float,
    grid: Grid | None = None,
    grid_n: int | None = None,
) -> SliceResult:
    """Slice of the graph of dF at height a < 0.

    The level must be negative and clear of critical values of dF/dx2; the
    returned diagram carries a grid-scaled tolerance.
    """
    if a >= 0:
        raise ValueError("slices are taken at negative heights only")
    if grid is None:
        grid = Grid.for_support(family.support_bbox(), grid_n or DEFAULT_GRID)

    def field(x, y):
        return family.partials(x, y)[1]

    try:
        loops = marching_squares(field, grid, a)
    except BoundaryContact as exc:
        raise NonGenericLevel(str(exc)) from exc

    # Transversality: keep the level away from critical values of dF/dx2.
    # Near a nondegenerate critical point with Hessian scale H the contour
    # geometry degrades once |a - v| < H * (k h)^2 / 2 (contour radius under
    # k cells).
    if loops:
        for point, value, hscale in _height_critical_points(family, grid):
            guard = 0.5 * hscale * (3.0 * grid.cell_diagonal) ** 2
            if abs(a - value) < guard:
                raise NonGenericLevel(
                    f"level {a} is within the grid guard of the critical value "
                    f"{value:.6g} of dF/dx2"
                )

    tolerance = 2.0 * grid.cell_diagonal / max(
        grid.x1 - grid.x0, grid.y1 - grid.y0
    )
    comps = _image_components(family, loops)
    if not comps:
        diagram = SliceDiagram(
            components=(), crossings=(), tolerance=tolerance, arrangement=None
        )
        return SliceResult(
            level=float(a),
            domain_loops=tuple(loops),
            diagram=diagram,
            classification=classify(diagram),
            grid=grid,
            tolerance=tolerance,
        )
    try:
        diagram = SliceDiagram.build(
            comps, tolerance, min_self_param_gap=SELF_GAP_CELLS
        )
    except (DegeneracyError, GeometryError) as exc:
        raise NonGenericLevel(f"degenerate image diagram: {exc}") from exc
    return SliceResult(
        level=float(a),
        domain_loops=tuple(loops),
        diagram=diagram,
        classification=classify(diagram),
        grid=grid,
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class SweepEvent:
    bracket: tuple[float, float]
    before: str
    after: str

    def to_json_dict(self) -> dict:
        return {
            "bracket": list(self.bracket),
            "before": self.before,
            "after": self.after,
        }


@dataclass
class SweepResult:
    levels: list[float]
    summaries: list[dict]
    events: list[SweepEvent] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "levels": self.levels,
            "summaries": self.summaries,
            "events": [e.to_json_dict() for e in self.events],
            "skipped": self.skipped,
        }


def _shape_signature(res: SliceResult) -> str:
    return (
        f"{len(res.diagram.components)}c/"
        f"{len(res.diagram.crossings)}x/{res.classification.family}"
    )


def sweep(
    family: GeneratingFamily,
    a_lo: float,
    a_hi: float,
    steps: int,
    grid_n: int | None = None,
    on_level=None,
) -> SweepResult:
    """Classify slices on a level ladder and bracket the transitions.

    Transition brackets between adjacent distinguishable levels are refined
    by bisection to 1e-3 of the sweep range; non-generic levels are skipped
    but recorded.
    """
    if not (a_lo < a_hi < 0):
        raise ValueError("need a_lo < a_hi < 0")
    grid = Grid.for_support(family.support_bbox(), grid_n or DEFAULT_GRID)
    levels = list(np.linspace(a_lo, a_hi, steps))
    out = SweepResult(levels=[], summaries=[])
    good: list[tuple[float, str]] = []
    for a in levels:
        try:
            res = extract_slice(family, float(a), grid=grid)
        except NonGenericLevel as exc:
            out.skipped.append({"level": float(a), "reason": str(exc)})
            continue
        sig = _shape_signature(res)
        summary = res.summary()
        out.levels.append(float(a))
        out.summaries.append(summary)
        good.append((float(a), sig))
        if on_level is not None:
            on_level(summary)

    target = 1e-3 * (a_hi - a_lo)
    for (lo, sig_lo), (hi, sig_hi) in zip(good, good[1:]):
        if sig_lo == sig_hi:
            continue
        blo, bhi = lo, hi
        s_lo, s_hi = sig_lo, sig_hi
        while bhi - blo > target:
            mid = 0.5 * (blo + bhi)
            try:
                sig_mid = _shape_signature(extract_slice(family, mid, grid=grid))
            except NonGenericLevel:
                mid = blo + 0.61803 * (bhi - blo)
                try:
                    sig_mid = _shape_signature(extract_slice(family, mid, grid=grid))
                except NonGenericLevel:
                    break
            if sig_mid == s_lo:
                blo = mid
            else:
                bhi = mid
                s_hi = sig_mid
        out.events.append(SweepEvent((blo, bhi), s_lo, s_hi))
    return out


@dataclass(frozen=True)
class RelationWitness:
    bottom: SliceResult
    top: SliceResult
    family_digest: str

    def to_json_dict(self) -> dict:
        return {
            "family_digest": self.family_digest,
            "bottom": self.bottom.to_json_dict(),
            "top": self.top.to_json_dict(),
        }


def witness_relation(
    family: GeneratingFamily, a: float, b: float, grid_n: int | None = None
) -> RelationWitness:
    """Certified numeric witness that the slice at a strictly precedes b.

    Both levels belong to the same family (one Lagrangian), so the pair of
    generic extractions is itself the certificate.
    """
    if not (a < b < 0):
        raise ValueError("need a < b < 0")
    grid = Grid.for_support(family.support_bbox(), grid_n or DEFAULT_GRID)
    bottom = extract_slice(family, a, grid=grid)
    top = extract_slice(family, b, grid=grid)
    return RelationWitness(bottom=bottom, top=top, family_digest=family.digest())
