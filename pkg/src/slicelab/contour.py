"""Marching-squares extraction of closed level-set curves on a grid.

Standard 16-case marching squares with linear interpolation along cell
edges; the two ambiguous saddle cases are resolved by evaluating the field
at the cell centre.  Edge intersection points are computed once per grid
edge and shared between the two adjacent cells, so chained segments meet
exactly and every contour of a level that avoids the grid boundary closes
up into a loop.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

DEFAULT_GRID = int(os.environ.get("SLICELAB_GRID_DEFAULT", "256"))


@dataclass(frozen=True)
class Grid:
    x0: float
    y0: float
    x1: float
    y1: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 16 or self.ny < 16:
            raise ValueError("grid needs at least 16 cells per axis")
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("degenerate grid rectangle")

    @staticmethod
    def for_support(bbox, n: int = DEFAULT_GRID, margin: float = 0.1) -> "Grid":
        # Slightly asymmetric margins keep grid lines off symmetry axes of
        # the family, so image crossings fall inside polyline segments.
        x0, y0, x1, y1 = bbox
        dx, dy = x1 - x0, y1 - y0
        skew = 0.0173205080757  # a hundredth of sqrt(3)
        return Grid(
            x0 - (margin + skew) * dx,
            y0 - (margin + skew) * dy,
            x1 + margin * dx,
            y1 + margin * dy,
            n,
            n,
        )

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x0, self.x1, self.nx + 1)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.y0, self.y1, self.ny + 1)

    @property
    def hx(self) -> float:
        return (self.x1 - self.x0) / self.nx

    @property
    def hy(self) -> float:
        return (self.y1 - self.y0) / self.ny

    @property
    def cell_diagonal(self) -> float:
        return math.hypot(self.hx, self.hy)


class BoundaryContact(ValueError):
    """The level set touches the grid boundary; enlarge the domain."""


def _edge_point(kind, i, j, xs, ys, vals, cache):
    key = (kind, i, j)
    pt = cache.get(key)
    if pt is not None:
        return pt
    if kind == "H":
        v0, v1 = vals[i, j], vals[i + 1, j]
        t = v0 / (v0 - v1)
        pt = (xs[i] + t * (xs[i + 1] - xs[i]), ys[j])
    else:
        v0, v1 = vals[i, j], vals[i, j + 1]
        t = v0 / (v0 - v1)
        pt = (xs[i], ys[j] + t * (ys[j + 1] - ys[j]))
    cache[key] = pt
    return pt


# For each of the 16 corner-sign cases, the cell edges joined by segments.
# Corners: 1 = (i,j), 2 = (i+1,j), 4 = (i+1,j+1), 8 = (i,j+1).
# Edges: B(ottom) H(i,j), R(ight) V(i+1,j), T(op) H(i,j+1), L(eft) V(i,j).
_CASE_SEGMENTS = {
    0: [],
    1: [("L", "B")],
    2: [("B", "R")],
    3: [("L", "R")],
    4: [("R", "T")],
    5: None,  # ambiguous
    6: [("B", "T")],
    7: [("L", "T")],
    8: [("T", "L")],
    9: [("T", "B")],
    10: None,  # ambiguous
    11: [("T", "R")],
    12: [("R", "L")],
    13: [("B", "R")],
    14: [("L", "B")],
    15: [],
}


def _edge_key(edge: str, i: int, j: int):
    if edge == "B":
        return ("H", i, j)
    if edge == "T":
        return ("H", i, j + 1)
    if edge == "L":
        return ("V", i, j)
    return ("V", i + 1, j)


def marching_squares(field, grid: Grid, level: float = 0.0):
    """Closed loops of {field = level} as lists of (x, y) points.

    ``field(x1, x2)`` must accept numpy arrays.  Raises
    :class:`BoundaryContact` when the level set meets the grid edge.
    """
    xs, ys = grid.xs, grid.ys
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    vals = np.asarray(field(gx, gy), dtype=float) - level

    border = np.concatenate([vals[0, :], vals[-1, :], vals[:, 0], vals[:, -1]])
    if not (np.all(border > 0.0) or np.all(border < 0.0)):
        raise BoundaryContact("level set reaches the grid boundary")

    pos = vals > 0.0
    cases = (
        pos[:-1, :-1].astype(np.uint8)
        + 2 * pos[1:, :-1]
        + 4 * pos[1:, 1:]
        + 8 * pos[:-1, 1:]
    )
    cache: dict = {}
    links: dict = {}

    def connect(ka, kb):
        links.setdefault(ka, []).append(kb)
        links.setdefault(kb, []).append(ka)

    cells = np.argwhere((cases != 0) & (cases != 15))
    centers_needed = [(i, j) for i, j in cells if _CASE_SEGMENTS[cases[i, j]] is None]
    center_vals = {}
    if centers_needed:
        cx = np.array([(xs[i] + xs[i + 1]) / 2 for i, j in centers_needed])
        cy = np.array([(ys[j] + ys[j + 1]) / 2 for i, j in centers_needed])
        cvals = np.asarray(field(cx, cy), dtype=float) - level
        center_vals = {ij: v for ij, v in zip(map(tuple, centers_needed), cvals)}

    for i, j in cells:
        case = int(cases[i, j])
        segments = _CASE_SEGMENTS[case]
        if segments is None:
            # Saddle cell: pair edges according to the centre sign.
            centre_pos = center_vals[(i, j)] > 0.0
            if case == 5:
                segments = (
                    [("L", "T"), ("B", "R")] if centre_pos else [("L", "B"), ("R", "T")]
                )
            else:  # case 10
                segments = (
                    [("T", "R"), ("B", "L")] if centre_pos else [("L", "T"), ("B", "R")]
                )
        for ea, eb in segments:
            connect(_edge_key(ea, i, j), _edge_key(eb, i, j))

    loops = []
    visited = set()
    for start in links:
        if start in visited:
            continue
        walk = [start]
        visited.add(start)
        prev = None
        cur = start
        while True:
            nbrs = links[cur]
            if len(nbrs) != 2:
                raise ValueError("contour graph is not 2-regular; degenerate level")
            nxt = nbrs[0] if nbrs[0] != prev else nbrs[1]
            if nxt == start:
                break
            walk.append(nxt)
            visited.add(nxt)
            prev, cur = cur, nxt
        pts = np.array(
            [_edge_point(k, i, j, xs, ys, vals, cache) for (k, i, j) in walk]
        )
        if len(pts) >= 6:
            loops.append(pts)
    return loops
