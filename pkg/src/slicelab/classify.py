"""Catalog classification of extracted slice diagrams.

A diagram is classified by exact match of its canonical decorated Gauss
code against realised catalog templates, together with a 2% relative match
of its region areas to the catalog shape's area pattern.  Anything that
does not match exactly stays "unclassified"; the classifier never force
fits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .catalog import Cat, EightMinus, EightPlus, realize_catalog
from .diagram import SliceDiagram
from .equivalence import canonical_code

AREA_RTOL = 0.02


@dataclass(frozen=True)
class Classification:
    label: str
    family: str  # "empty" | "8+" | "8-" | "C(...)" | "sum" | "nest" | "unclassified"
    areas: tuple[float, ...] = ()

    @property
    def classified(self) -> bool:
        return self.family not in ("unclassified",)


UNCLASSIFIED = Classification("unclassified", "unclassified")


@lru_cache(maxsize=None)
def _template_code(kind: str, signs: tuple[int, ...] = ()):
    """Canonical code of a catalog shape; independent of the areas used."""
    if kind == "8+":
        spec = EightPlus(Fraction(1))
    elif kind == "8-":
        spec = EightMinus(Fraction(1))
    else:
        spec = Cat(signs, (Fraction(4), Fraction(2), Fraction(3)))
    return canonical_code(realize_catalog(spec))


def _close(a: float, b: float, rtol: float = AREA_RTOL) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b), 1e-300)


def _fmt_area(a: float) -> str:
    return f"{a:.4g}"


def _classify_single_component(diagram: SliceDiagram) -> Classification:
    code = canonical_code(diagram)
    areas = sorted(float(f.true_area) for f in diagram.arrangement.faces if f.bounded)
    n_cross = len(diagram.crossings)
    if n_cross == 1:
        sign = diagram.crossings[0].sign
        kind = "8+" if sign > 0 else "8-"
        if code != _template_code(kind):
            return UNCLASSIFIED
        if len(areas) != 2 or not _close(areas[0], areas[1]):
            return UNCLASSIFIED
        a = (areas[0] + areas[1]) / 2.0
        return Classification(f"{kind}({_fmt_area(a)})", kind, (a,))
    if n_cross == 3:
        return _classify_caterpillar(diagram, code, areas)
    return UNCLASSIFIED


def _lobe_chain(diagram: SliceDiagram):
    """Faces of a 3-crossing chain ordered end to end, or None."""
    faces = [f for f in diagram.arrangement.faces if f.bounded]
    if len(faces) != 4:
        return None
    incident = []
    for f in faces:
        crossings = set()
        for arc_idx, _ in f.boundary:
            arc = diagram.arrangement.arcs[arc_idx]
            for pi in (arc.start_passage, arc.end_passage):
                crossings.add(diagram.arrangement.passages[pi].crossing)
        incident.append(crossings)
    ends = [i for i, s in enumerate(incident) if len(s) == 1]
    mids = [i for i, s in enumerate(incident) if len(s) == 2]
    if len(ends) != 2 or len(mids) != 2:
        return None
    order = [ends[0]]
    seen_crossings = set(incident[ends[0]])
    remaining = set(mids + [ends[1]])
    while remaining:
        nxt = None
        for i in remaining:
            if incident[i] & seen_crossings:
                nxt = i
                break
        if nxt is None:
            return None
        order.append(nxt)
        seen_crossings |= incident[nxt]
        remaining.discard(nxt)
    chain_faces = [faces[i] for i in order]
    crossing_order = []
    for a, b in zip(order, order[1:]):
        shared = incident[a] & incident[b]
        if len(shared) != 1:
            return None
        crossing_order.append(next(iter(shared)))
    return chain_faces, crossing_order


def _classify_caterpillar(diagram, code, areas) -> Classification:
    chain = _lobe_chain(diagram)
    if chain is None:
        return UNCLASSIFIED
    chain_faces, crossing_order = chain
    for flip in (False, True):
        faces = chain_faces[::-1] if flip else chain_faces
        xorder = crossing_order[::-1] if flip else crossing_order
        a = [float(f.true_area) for f in faces]
        if not _close(a[3], a[0] - a[1] + a[2]):
            continue
        signs = tuple(diagram.crossings[x].sign for x in xorder)
        if code != _template_code("cat", signs):
            continue
        s = ",".join("+" if x > 0 else "-" for x in signs)
        label = f"C({s};{_fmt_area(a[0])},{_fmt_area(a[1])},{_fmt_area(a[2])})"
        return Classification(label, f"C({s})", tuple(a[:3]))
    return UNCLASSIFIED


def classify(diagram: SliceDiagram) -> Classification:
    """Best exact classification of a diagram against the catalog."""
    if diagram.is_empty:
        return Classification("empty", "empty")
    if not diagram.is_valid():
        return UNCLASSIFIED
    arr = diagram.arrangement
    clusters = sorted(set(arr.cluster_of_component.values()))
    if len(clusters) == 1 and len(diagram.components) == 1:
        return _classify_single_component(diagram)
    if any(not c.is_self for c in diagram.crossings):
        return UNCLASSIFIED

    # Disjoint clusters: classify each, then report a sum or a nest.
    sub = []
    for cl in clusters:
        comp_ids = [i for i, c in arr.cluster_of_component.items() if c == cl]
        comps = [diagram.components[i] for i in comp_ids]
        piece = SliceDiagram.build(comps, diagram.tolerance)
        sub.append((cl, comp_ids, classify(piece)))
    if any(not c.classified for _, _, c in sub):
        return UNCLASSIFIED

    hosted = {
        cl: f
        for f in arr.faces
        for cl in f.contains_clusters
    }
    if not hosted:
        order = sorted(
            sub,
            key=lambda item: min(
                diagram.components[i].vertices[:, 0].min() for i in item[1]
            ),
        )
        label = " + ".join(c.label for _, _, c in order)
        families = " + ".join(c.family for _, _, c in order)
        return Classification(label, families)
    if len(sub) == 2 and len(hosted) == 1:
        inner_cl = next(iter(hosted))
        inner = next(c for cl, _, c in sub if cl == inner_cl)
        outer = next(c for cl, _, c in sub if cl != inner_cl)
        return Classification(
            f"nest({inner.label},{outer.label})", f"nest({inner.family},{outer.family})"
        )
    return UNCLASSIFIED
