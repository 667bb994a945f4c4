"""Critical-point data of the height difference function, read off a diagram.

Each self-crossing of a component contributes a pair of nondegenerate
critical points.  For the branch whose first height coordinate is the lift
of passage ``b``:

* its critical value is minus the signed area enclosed by a capping path
  running along the curve from the other passage to passage ``b`` (either of
  the two arcs works: components bound zero signed area, so the two choices
  agree);
* its index sits at a fixed offset above the background index N, with
  offset = 1 - mu, where mu is the number of half-turns of the tangent line
  along the capping path after closing the line path by a clockwise
  rotation (counterclockwise turning counts positive);
* it lies in the half-space P+ when its first height is the smaller one,
  P- otherwise.

Crossings between different components admit no capping path; their rows
are symbolic (value and offset unknown, location still determined by the
lifts).  There is additionally one critical submanifold row with value 0
and offset 1.

Values are exact rationals whenever the diagram's region areas are exact
(catalog realisations); enclosed areas are assembled as integer winding
numbers against the recorded faces, with a float shoelace cross-check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .diagram import SliceDiagram
from .geometry import (
    GeometryError,
    edge_angles,
    signed_area,
    unwrap_direction_angles,
)

SUBMANIFOLD = "critical-submanifold"


class NonGenericTable(Exception):
    """Raised only internally; tables carry a flag instead of failing."""


@dataclass(frozen=True)
class CriticalPointDatum:
    source: int | str  # crossing index, or the critical-submanifold tag
    branch: int  # 0/1, ordered by the component parameter of the passage
    location: str | None  # "P+" | "P-" | None for the submanifold row
    index_offset: int | None  # Morse index minus N; None when symbolic
    value: object  # Fraction | float | None when symbolic
    pair_id: int | None

    @property
    def symbolic(self) -> bool:
        return self.value is None and self.source != SUBMANIFOLD


@dataclass(frozen=True)
class Topology:
    components: int
    h0: int
    h1: int


@dataclass(frozen=True)
class MorseTable:
    data: tuple[CriticalPointDatum, ...]
    topology: Topology
    non_generic: bool
    non_generic_reason: str | None = None

    @property
    def has_symbolic(self) -> bool:
        return any(d.symbolic for d in self.data)

    def crossing_rows(self):
        return [d for d in self.data if d.source != SUBMANIFOLD]

    def numeric_rows(self):
        return [d for d in self.data if d.source != SUBMANIFOLD and not d.symbolic]

    def to_json_dict(self) -> dict:
        rows = []
        for d in self.data:
            rows.append(
                {
                    "source": d.source,
                    "branch": d.branch,
                    "location": d.location,
                    "offset": d.index_offset if d.index_offset is not None else "symbolic",
                    "value": float(d.value) if d.value is not None else "symbolic",
                }
            )
        return {
            "rows": rows,
            "topology": {
                "components": self.topology.components,
                "h0": self.topology.h0,
                "h1": self.topology.h1,
            },
            "non_generic": self.non_generic,
        }


def _passage_params(diagram: SliceDiagram, crossing_index: int):
    c = diagram.crossings[crossing_index]
    return c.strands, c.lifts


def _capping_arcs(diagram: SliceDiagram, crossing_index: int, branch: int, arc: str = "forward"):
    """Directed arcs of the capping path for the given branch.

    The path runs from the other passage to the branch passage, so the
    branch's own lift is the first height coordinate of the critical point.
    ``arc="other"`` picks the complementary arc of the component (same
    endpoints, opposite way around); the two must agree on value and offset.
    """
    strands, _ = _passage_params(diagram, crossing_index)
    if strands[0].component != strands[1].component:
        return None
    comp = strands[0].component
    start = strands[1 - branch].param
    end = strands[branch].param
    if arc == "forward":
        return diagram.arrangement.arcs_between(comp, start, end)
    complement = diagram.arrangement.arcs_between(comp, end, start)
    return [(ai, -d) for ai, d in reversed(complement)]


def _path_points(diagram: SliceDiagram, directed_arcs) -> np.ndarray:
    pieces = []
    for arc_idx, direction in directed_arcs:
        chain = diagram.arrangement.arcs[arc_idx].chain
        if direction < 0:
            chain = chain[::-1]
        pieces.append(chain[:-1])
    last = diagram.arrangement.arcs[directed_arcs[-1][0]].chain
    end_pt = last[-1] if directed_arcs[-1][1] > 0 else last[0]
    return np.vstack(pieces + [end_pt[None, :]])


def capping_value(diagram: SliceDiagram, crossing_index: int, branch: int, arc: str = "forward"):
    """Critical value of one branch of a self-crossing; None if symbolic.

    Exact (rational) when the diagram's face areas are exact.  The result is
    cross-checked against a float shoelace of the path.
    """
    arcs = _capping_arcs(diagram, crossing_index, branch, arc)
    if arcs is None:
        return None
    windings = diagram.arrangement.face_windings_of_loop(arcs)
    faces = diagram.arrangement.faces
    hit = [(faces[fi], w) for fi, w in windings.items() if w != 0 and faces[fi].bounded]
    if all(isinstance(f.area, Fraction) for f, _ in hit):
        total = sum((f.area * w for f, w in hit), start=Fraction(0))
    else:
        total = float(sum(float(f.area) * w for f, w in hit))
    value = -total

    pts = _path_points(diagram, arcs)
    shoelace = -signed_area(pts) if len(pts) >= 3 else 0.0
    scale = diagram.scale()
    if abs(float(value) - shoelace) > 1e-7 * max(1.0, scale * scale):
        raise GeometryError(
            f"capping area mismatch: faces give {float(value)}, shoelace {shoelace}"
        )
    return value


def _path_tangent_angles(diagram: SliceDiagram, crossing_index: int, branch: int, arc: str):
    """Tangent angles along the capping path from recorded exact tangents.

    Returns None when the component does not carry tangents.  The chord
    directions of a traced polyline are noise wherever the image map
    compresses steps; recorded tangents make the turning count exact.
    """
    strands, _ = _passage_params(diagram, crossing_index)
    comp_idx = strands[0].component
    comp = diagram.components[comp_idx]
    if comp.tangents is None:
        return None
    p_from = strands[1 - branch].param
    p_to = strands[branch].param
    if arc == "other":
        p_from, p_to = p_to, p_from

    n = comp.n_segments
    angles = [math.atan2(*comp.exact_tangent_at(p_from)[::-1])]
    v = int(math.floor(p_from)) + 1
    end = p_to if p_to > p_from else p_to + n
    while v < end:
        t = comp.tangents[v % len(comp.tangents)]
        angles.append(math.atan2(t[1], t[0]))
        v += 1
    angles.append(math.atan2(*comp.exact_tangent_at(p_to)[::-1]))
    if arc == "other":
        angles = [a + math.pi for a in reversed(angles)]
    return angles


def capping_index_offset(diagram: SliceDiagram, crossing_index: int, branch: int, arc: str = "forward"):
    """Index offset (Morse index minus N) of one branch; None if symbolic.

    Both chord directions and recorded tangents are genuine directions, so
    the unwrap runs modulo a full turn; the half-turn count then comes from
    closing the line path clockwise.
    """
    arcs = _capping_arcs(diagram, crossing_index, branch, arc)
    if arcs is None:
        return None
    angles = _path_tangent_angles(diagram, crossing_index, branch, arc)
    if angles is None:
        pts = _path_points(diagram, arcs)
        angles = edge_angles(pts)
    unwrapped = unwrap_direction_angles(angles)
    dtheta = float(unwrapped[-1] - unwrapped[0])
    gap = dtheta % math.pi
    if min(gap, math.pi - gap) < 1e-9:
        raise GeometryError("capping path endpoints have parallel tangents")
    half_turns = round((dtheta - gap) / math.pi)
    return 1 - half_turns


def location(diagram: SliceDiagram, crossing_index: int, branch: int) -> str:
    """P+ / P- half-space of the branch, decided by the lift comparison."""
    _, lifts = _passage_params(diagram, crossing_index)
    own, other = lifts[branch], lifts[1 - branch]
    if own == other:
        raise GeometryError("equal lifts at crossing")
    return "P+" if own < other else "P-"


def morse_table(diagram: SliceDiagram) -> MorseTable:
    """Full critical-point table of a diagram.

    Self-crossing rows carry numeric values and offsets; rows of crossings
    between components are symbolic.  Pairs are checked for value sum 0 and
    offset sum 3, and for agreement between the two capping arcs.
    """
    rows: list[CriticalPointDatum] = []
    non_generic = False
    reason = None
    scale = diagram.scale()
    # Numeric diagrams distinguish a value from zero once it clears the
    # geometry's own noise floor (the components' signed-area residuals).
    noise = max(
        (abs(c.signed_area()) for c in diagram.components), default=0.0
    )
    zero_band = max(20.0 * noise, 1e-12 * max(1.0, scale * scale))
    for ci, crossing in enumerate(diagram.crossings):
        if crossing.is_self:
            values = []
            offsets = []
            for branch in (0, 1):
                values.append(capping_value(diagram, ci, branch))
                offsets.append(capping_index_offset(diagram, ci, branch))
            pair_sum = values[0] + values[1]
            # The residual is the component's signed-area defect, which for
            # traced diagrams is grid-limited; the tolerance field carries it.
            if pair_sum != 0 and abs(float(pair_sum)) > diagram.tolerance * max(
                1.0, scale * scale
            ):
                raise GeometryError("crossing pair values do not cancel")
            if offsets[0] + offsets[1] != 3:
                raise GeometryError(
                    f"crossing pair offsets {offsets} do not sum to 3; curve under-sampled?"
                )
            for branch in (0, 1):
                if offsets[branch] not in (0, 1, 2, 3):
                    warnings.warn(
                        f"crossing {ci} branch {branch} has offset {offsets[branch]} "
                        "outside the expected range",
                        stacklevel=2,
                    )
                v = values[branch]
                zero_hit = v == 0 if isinstance(v, Fraction) else abs(float(v)) <= zero_band
                if zero_hit:
                    non_generic = True
                    reason = f"crossing {ci} has critical value 0"
                rows.append(
                    CriticalPointDatum(
                        source=ci,
                        branch=branch,
                        location=location(diagram, ci, branch),
                        index_offset=offsets[branch],
                        value=values[branch],
                        pair_id=ci,
                    )
                )
        else:
            for branch in (0, 1):
                rows.append(
                    CriticalPointDatum(
                        source=ci,
                        branch=branch,
                        location=location(diagram, ci, branch),
                        index_offset=None,
                        value=None,
                        pair_id=ci,
                    )
                )
    if not diagram.is_empty:
        rows.append(
            CriticalPointDatum(
                source=SUBMANIFOLD,
                branch=0,
                location=None,
                index_offset=1,
                value=Fraction(0),
                pair_id=None,
            )
        )
    c = len(diagram.components)
    return MorseTable(
        data=tuple(rows),
        topology=Topology(components=c, h0=c, h1=c),
        non_generic=non_generic,
        non_generic_reason=reason,
    )
