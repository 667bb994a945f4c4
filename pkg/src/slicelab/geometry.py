"""Low-level planar geometry: segment intersections, areas, turning numbers.

Everything works on plain float pairs or numpy arrays of shape (n, 2).
Routines here are deliberately free of diagram-level concepts; degeneracies
are reported via :class:`GeometryError` and classified by the caller.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np


class GeometryError(ValueError):
    """A geometric degeneracy (tangency, collinear overlap, zero tangent)."""

    def __init__(self, message: str, point: tuple[float, float] | None = None):
        super().__init__(message if point is None else f"{message} near {point}")
        self.point = point


def signed_area(vertices: np.ndarray) -> float:
    """Shoelace signed area of a closed polygon given as (n, 2) vertices.

    The closing edge from the last vertex back to the first is implied.
    Counterclockwise traversal gives positive area.
    """
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
        raise GeometryError("signed_area needs at least 3 points")
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return float(0.5 * np.sum(x * yn - xn * y))


def polyline_length(vertices: np.ndarray, closed: bool = True) -> float:
    v = np.asarray(vertices, dtype=float)
    d = np.diff(v, axis=0)
    total = float(np.hypot(d[:, 0], d[:, 1]).sum())
    if closed:
        total += float(np.hypot(*(v[0] - v[-1])))
    return total


def turning_number(vertices: np.ndarray) -> float:
    """Total tangent rotation of a closed polyline, in full turns.

    Sums the exterior angles between consecutive edges (including the
    closing edge).  For a polyline sampled from a smooth immersed curve
    the result is within rounding noise of an integer.
    """
    v = np.asarray(vertices, dtype=float)
    edges = np.diff(np.vstack([v, v[:1]]), axis=0)
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    if np.any(lengths == 0.0):
        raise GeometryError("repeated consecutive vertices")
    ang = np.arctan2(edges[:, 1], edges[:, 0])
    d = np.diff(np.concatenate([ang, ang[:1]]))
    d = (d + np.pi) % (2.0 * np.pi) - np.pi
    return float(d.sum() / (2.0 * np.pi))


def segment_intersection(
    p0: np.ndarray,
    p1: np.ndarray,
    q0: np.ndarray,
    q1: np.ndarray,
    eps: float = 1e-12,
) -> tuple[float, float] | None:
    """Proper intersection of open segments p0p1 and q0q1.

    Returns (s, t) parameters with the crossing at p0 + s*(p1-p0), both in
    the open interval (0, 1), or None when the segments do not properly
    cross.  Near-parallel overlaps and endpoint touches within ``eps``
    (relative to segment scale) raise :class:`GeometryError` so callers can
    surface the degeneracy instead of silently mis-counting crossings.
    """
    r = p1 - p0
    s = q1 - q0
    denom = float(r[0] * s[1] - r[1] * s[0])
    qp = q0 - p0
    scale = max(abs(r[0]), abs(r[1]), abs(s[0]), abs(s[1]), 1e-300)
    if abs(denom) <= eps * scale * scale:
        # Parallel: either disjoint (fine) or collinear overlap (degenerate).
        cross = float(qp[0] * r[1] - qp[1] * r[0])
        if abs(cross) <= eps * scale * scale:
            rr = float(r @ r)
            if rr == 0.0:
                return None
            t0 = float(qp @ r) / rr
            t1 = t0 + float(s @ r) / rr
            lo, hi = min(t0, t1), max(t0, t1)
            if hi > eps and lo < 1.0 - eps:
                raise GeometryError("collinear segment overlap", tuple(p0))
        return None
    u = float(qp[0] * s[1] - qp[1] * s[0]) / denom
    w = float(qp[0] * r[1] - qp[1] * r[0]) / denom
    pad = eps
    if -pad < u < pad or 1.0 - pad < u < 1.0 + pad or -pad < w < pad or 1.0 - pad < w < 1.0 + pad:
        if -pad < u < 1.0 + pad and -pad < w < 1.0 + pad:
            raise GeometryError("segment intersection at an endpoint", tuple(p0 + u * r))
        return None
    if 0.0 < u < 1.0 and 0.0 < w < 1.0:
        return (u, w)
    return None


def unwrap_line_angles(angles: Sequence[float], max_step: float = 0.49 * math.pi) -> np.ndarray:
    """Continuously unwrap tangent-line angles tracked modulo pi.

    ``angles`` are direction angles of consecutive polyline edges; the
    returned array differs from the input by multiples of pi and has steps
    smaller than pi/2 in absolute value.  Steps that cannot be resolved
    within ``max_step`` indicate under-sampling and raise.
    """
    out = np.empty(len(angles))
    out[0] = angles[0]
    for i in range(1, len(angles)):
        a = angles[i]
        k = round((out[i - 1] - a) / math.pi)
        a = a + k * math.pi
        if abs(a - out[i - 1]) > max_step:
            raise GeometryError(
                f"tangent line turns by {abs(a - out[i-1]):.3f} rad in one step; curve under-sampled"
            )
        out[i] = a
    return out


def unwrap_direction_angles(angles: Sequence[float], max_step: float = 0.98 * math.pi) -> np.ndarray:
    """Continuously unwrap direction angles tracked modulo 2*pi.

    Unlike the line-angle unwrap, direction samples resolve steps up to
    just under a half-turn, so a tangent that swings through the vertical
    between samples is still tracked correctly.
    """
    out = np.empty(len(angles))
    out[0] = angles[0]
    for i in range(1, len(angles)):
        step = (angles[i] - out[i - 1] + math.pi) % (2.0 * math.pi) - math.pi
        if abs(step) > max_step:
            raise GeometryError(
                f"tangent direction turns by {abs(step):.3f} rad in one step; "
                "curve under-sampled"
            )
        out[i] = out[i - 1] + step
    return out


def edge_angles(vertices: np.ndarray) -> np.ndarray:
    """Direction angle of each edge of an open polyline path."""
    v = np.asarray(vertices, dtype=float)
    d = np.diff(v, axis=0)
    lengths = np.hypot(d[:, 0], d[:, 1])
    keep = lengths > 0.0
    if not np.all(keep):
        d = d[keep]
    if len(d) == 0:
        raise GeometryError("path has no extent")
    return np.arctan2(d[:, 1], d[:, 0])


def winding_number(loop: np.ndarray, point: tuple[float, float]) -> int:
    """Winding number of a closed polyline loop around a point off the loop."""
    v = np.asarray(loop, dtype=float)
    rel = v - np.asarray(point, dtype=float)
    ang = np.arctan2(rel[:, 1], rel[:, 0])
    d = np.diff(np.concatenate([ang, ang[:1]]))
    d = (d + np.pi) % (2.0 * np.pi) - np.pi
    total = d.sum() / (2.0 * np.pi)
    w = round(float(total))
    if abs(total - w) > 1e-6:
        raise GeometryError("winding number ill-defined; point too close to loop", point)
    return w


def point_in_polygon(polygon: np.ndarray, point: tuple[float, float]) -> bool:
    """Strict interior test for a simple polygon (even-odd rule)."""
    v = np.asarray(polygon, dtype=float)
    x, y = point
    inside = False
    n = len(v)
    for i in range(n):
        x0, y0 = v[i]
        x1, y1 = v[(i + 1) % n]
        if (y0 > y) != (y1 > y):
            xi = x0 + (y - y0) / (y1 - y0) * (x1 - x0)
            if xi > x:
                inside = not inside
    return inside


def interior_point(polygon: np.ndarray) -> tuple[float, float]:
    """A point strictly inside a simple polygon.

    Uses the classic convex-corner construction: take the lowest-leftmost
    vertex v with neighbours a, b; if no other vertex lies inside triangle
    (a, v, b), its centroid is interior, otherwise the midpoint of v and the
    deepest contained vertex is.
    """
    v = np.asarray(polygon, dtype=float)
    n = len(v)
    if n < 3:
        raise GeometryError("polygon needs at least 3 vertices")
    idx = np.lexsort((v[:, 0], v[:, 1]))[0]
    a, b = v[(idx - 1) % n], v[(idx + 1) % n]
    p = v[idx]

    def tri_area2(u, w, z):
        return (w[0] - u[0]) * (z[1] - u[1]) - (w[1] - u[1]) * (z[0] - u[0])

    orient = tri_area2(a, p, b)
    if orient == 0.0:
        # Degenerate corner; fall back to a perturbed midpoint probe.
        for frac in (0.5, 0.25, 0.75, 0.1, 0.9):
            c = ((a + b) * frac + p * (1 - frac)) / 1.0
            q = (float(c[0]), float(c[1]))
            if point_in_polygon(v, q):
                return q
        raise GeometryError("cannot find interior point", tuple(p))
    best = None
    best_d = -1.0
    for j in range(n):
        if j in ((idx - 1) % n, idx, (idx + 1) % n):
            continue
        q = v[j]
        s1 = tri_area2(a, p, q) * np.sign(orient)
        s2 = tri_area2(p, b, q) * np.sign(orient)
        s3 = tri_area2(b, a, q) * np.sign(orient)
        if s1 >= 0 and s2 >= 0 and s3 >= 0:
            d = abs(tri_area2(a, b, q))
            if d > best_d:
                best_d = d
                best = q
    if best is None:
        c = (a + p + b) / 3.0
    else:
        c = (p + best) / 2.0
    q = (float(c[0]), float(c[1]))
    if not point_in_polygon(v, q):
        raise GeometryError("interior point construction failed", q)
    return q


def point_polygon_clearance(polygon: np.ndarray, point: tuple[float, float]) -> float:
    """Distance from a point to the nearest polygon edge."""
    v = np.asarray(polygon, dtype=float)
    p = np.asarray(point, dtype=float)
    a = v
    b = np.roll(v, -1, axis=0)
    ab = b - a
    ap = p - a
    denom = np.einsum("ij,ij->i", ab, ab)
    t = np.clip(np.einsum("ij,ij->i", ap, ab) / np.where(denom == 0, 1.0, denom), 0.0, 1.0)
    proj = a + ab * t[:, None]
    d = np.hypot(proj[:, 0] - p[0], proj[:, 1] - p[1])
    return float(d.min())


def shear(vertices: np.ndarray, kx: float = 0.0, ky: float = 0.0) -> np.ndarray:
    """Apply the unit-determinant shear [[1, kx], [ky, 1 + kx*ky]]."""
    v = np.asarray(vertices, dtype=float)
    m = np.array([[1.0, kx], [ky, 1.0 + kx * ky]])
    return v @ m.T


def rotate(vertices: np.ndarray, theta: float) -> np.ndarray:
    v = np.asarray(vertices, dtype=float)
    c, s = math.cos(theta), math.sin(theta)
    m = np.array([[c, -s], [s, c]])
    return v @ m.T


def translate(vertices: np.ndarray, dx: float, dy: float) -> np.ndarray:
    return np.asarray(vertices, dtype=float) + np.array([dx, dy])
