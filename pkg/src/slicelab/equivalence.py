"""Canonical keys for diagram equivalence under area-preserving maps.

The key couples a canonical over/under-decorated signed Gauss code of the
link of curves with the sorted list of region areas.  Both are unchanged by
translations and by any orientation-preserving area-preserving map of the
plane; the code part is additionally minimised over relabelling freedoms
(component order, traversal start, per-component orientation reversal), so
the key is a genuine invariant of the diagram up to those moves.  Equal keys
are reported as equivalent; distinct keys mean "not equivalent by key" (the
key is not proven to be a complete invariant).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .diagram import SliceDiagram


def _component_visits(diagram: SliceDiagram):
    """Per component, the crossing passages in traversal order."""
    visits: list[list[tuple[int, bool, int]]] = [[] for _ in diagram.components]
    order: list[list[float]] = [[] for _ in diagram.components]
    for xi, crossing in enumerate(diagram.crossings):
        for slot, strand in enumerate(crossing.strands):
            is_over = crossing.over_strand == slot
            visits[strand.component].append((xi, is_over, crossing.sign))
            order[strand.component].append(strand.param)
    out = []
    for comp in range(len(diagram.components)):
        idx = sorted(range(len(visits[comp])), key=lambda i: order[comp][i])
        out.append([visits[comp][i] for i in idx])
    return out


def _candidate_code(visits, comp_order, orientations, rotations, crossing_components):
    label: dict[int, int] = {}
    code = []
    for pos, comp in enumerate(comp_order):
        seq = visits[comp]
        if not seq:
            code.append(())
            continue
        if orientations[comp] < 0:
            seq = list(reversed(seq))
        r = rotations[pos]
        seq = seq[r:] + seq[:r]
        part = []
        for xi, is_over, sign in seq:
            if xi not in label:
                label[xi] = len(label)
            ca, cb = crossing_components[xi]
            flipped = sign * orientations[ca] * orientations[cb]
            part.append((label[xi], 1 if is_over else 0, flipped))
        code.append(tuple(part))
    return tuple(code)


def canonical_code(diagram: SliceDiagram):
    """Lexicographically minimal decorated Gauss code over all freedoms."""
    visits = _component_visits(diagram)
    n = len(diagram.components)
    if n == 0:
        return ()
    crossing_components = [
        (c.strands[0].component, c.strands[1].component) for c in diagram.crossings
    ]
    best = None
    for comp_order in permutations(range(n)):
        for mask in range(1 << n):
            orientations = [1 if not (mask >> i) & 1 else -1 for i in range(n)]
            rot_ranges = [max(1, len(visits[c])) for c in comp_order]
            # Nested rotation loop, small sizes only.
            def rec(pos, rotations):
                nonlocal best
                if pos == len(comp_order):
                    cand = _candidate_code(
                        visits, comp_order, orientations, rotations, crossing_components
                    )
                    if best is None or cand < best:
                        best = cand
                    return
                for r in range(rot_ranges[pos]):
                    rec(pos + 1, rotations + [r])

            rec(0, [])
    return best


@dataclass(frozen=True)
class EquivalenceKey:
    n_components: int
    code: tuple
    areas: tuple[float, ...]  # sorted true region areas
    tolerance: float

    def matches(self, other: "EquivalenceKey") -> bool:
        if self.n_components != other.n_components or self.code != other.code:
            return False
        if len(self.areas) != len(other.areas):
            return False
        tol = max(self.tolerance, other.tolerance)
        for a, b in zip(self.areas, other.areas):
            if abs(a - b) > tol * max(1.0, abs(a), abs(b)):
                return False
        return True


def equivalence_key(diagram: SliceDiagram) -> EquivalenceKey:
    if diagram.is_empty:
        return EquivalenceKey(0, (), (), diagram.tolerance)
    areas = sorted(
        float(f.true_area) for f in diagram.arrangement.faces if f.bounded
    )
    return EquivalenceKey(
        n_components=len(diagram.components),
        code=canonical_code(diagram),
        areas=tuple(areas),
        tolerance=diagram.tolerance * 10.0,
    )


def equivalent(d1: SliceDiagram, d2: SliceDiagram) -> bool:
    """Equal canonical keys; a False only means "not equivalent by key"."""
    return equivalence_key(d1).matches(equivalence_key(d2))
