"""Catalog of model slice diagrams and the small DSL that names them.

Grammar::

    expr  := term { "+" term }
    term  := eight | cat | nest | merge
    eight := ("8+" | "8-") "(" num ")"
    cat   := "C(" sign "," sign "," sign ";" num "," num "," num ")"
    nest  := "nest(" expr "," expr ")"
    merge := "merge(" num "," num "," num ")"
    sign  := "+" | "-"

Areas are parsed exactly (as rationals), so realised diagrams can carry
exact region areas and downstream critical-value tables are exact rational
combinations of the inputs.

The geometric backbone is the "lens chain": a single closed curve made of k
stacked lens-shaped lobes whose signed areas alternate, so the total signed
area vanishes automatically; figure-eights are 2-lobe chains, caterpillars
4-lobe chains.  Lifts are tent functions around each crossing passage and
pick which strand runs over, which fixes each crossing sign.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arrangement import refresh_true_areas
from .diagram import PlanarPolyline, SliceDiagram, sum_diagrams, transform_diagram
from .geometry import (
    GeometryError,
    point_in_polygon,
    point_polygon_clearance,
)

CATALOG_TOLERANCE = 1e-9


class CatalogParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CatalogConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class EightPlus:
    area: Fraction

    def label(self) -> str:
        return f"8+({_fmt(self.area)})"


@dataclass(frozen=True)
class EightMinus:
    area: Fraction

    def label(self) -> str:
        return f"8-({_fmt(self.area)})"


@dataclass(frozen=True)
class Cat:
    signs: tuple[int, int, int]
    areas: tuple[Fraction, Fraction, Fraction]

    def label(self) -> str:
        s = ",".join("+" if x > 0 else "-" for x in self.signs)
        a = ",".join(_fmt(x) for x in self.areas)
        return f"C({s};{a})"


@dataclass(frozen=True)
class Sum:
    parts: tuple

    def label(self) -> str:
        return " + ".join(p.label() for p in self.parts)


@dataclass(frozen=True)
class Nest:
    inner: object
    outer: object

    def label(self) -> str:
        return f"nest({self.inner.label()},{self.outer.label()})"


@dataclass(frozen=True)
class Merge:
    areas: tuple[Fraction, Fraction, Fraction]

    def label(self) -> str:
        return f"merge({','.join(_fmt(x) for x in self.areas)})"


CatalogSpec = EightPlus | EightMinus | Cat | Sum | Nest | Merge


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_NUM_RE = re.compile(r"\d+(\.\d+)?(/\d+)?")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise CatalogParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos : self.pos + 1]

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected '{token}'")
        self.pos += len(token)

    def number(self) -> Fraction:
        self.skip_ws()
        m = _NUM_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a positive number")
        self.pos = m.end()
        raw = m.group(0)
        if "/" in raw:
            num, den = raw.split("/")
            q = Fraction(Fraction(num), Fraction(den))
        else:
            q = Fraction(raw)
        if q <= 0:
            self.error("areas must be strictly positive")
        return q

    def sign(self) -> int:
        self.skip_ws()
        ch = self.text[self.pos : self.pos + 1]
        if ch not in "+-":
            self.error("expected '+' or '-'")
        self.pos += 1
        return 1 if ch == "+" else -1

    def expr(self):
        parts = [self.term()]
        while self.peek() == "+":
            self.expect("+")
            parts.append(self.term())
        if len(parts) == 1:
            return parts[0]
        return Sum(tuple(parts))

    def term(self):
        self.skip_ws()
        rest = self.text[self.pos :]
        if rest.startswith("8+") or rest.startswith("8-"):
            positive = rest.startswith("8+")
            self.pos += 2
            self.expect("(")
            a = self.number()
            self.expect(")")
            return EightPlus(a) if positive else EightMinus(a)
        if rest.startswith("C("):
            self.pos += 2
            s1 = self.sign()
            self.expect(",")
            s2 = self.sign()
            self.expect(",")
            s3 = self.sign()
            self.expect(";")
            a1 = self.number()
            self.expect(",")
            a2 = self.number()
            self.expect(",")
            a3 = self.number()
            self.expect(")")
            if a1 - a2 + a3 <= 0:
                raise CatalogConstraintError(
                    f"caterpillar needs A1 - A2 + A3 > 0, got {_fmt(a1)} - {_fmt(a2)} + {_fmt(a3)}"
                )
            return Cat((s1, s2, s3), (a1, a2, a3))
        if rest.startswith("nest("):
            self.pos += 5
            inner = self.expr()
            self.expect(",")
            outer = self.expr()
            self.expect(")")
            return Nest(inner, outer)
        if rest.startswith("merge("):
            self.pos += 6
            a1 = self.number()
            self.expect(",")
            a2 = self.number()
            self.expect(",")
            a3 = self.number()
            self.expect(")")
            return Merge((a1, a2, a3))
        self.error("expected '8+', '8-', 'C(', 'nest(' or 'merge('")


def parse_catalog(text: str) -> CatalogSpec:
    """Parse a catalog expression, validating all area constraints."""
    p = _Parser(text)
    spec = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        p.error("trailing input")
    return spec


# ---------------------------------------------------------------------------
# Lens-chain realisation


def _chain_profile(k: int, amplitudes, n: int):
    """Sample the k-lobe chain with given hump amplitudes.

    Returns (vertices (n,2), hump sign list).  The parameter runs once
    around: left end, humps 1..k rightward, right end, mirrored humps back.
    """
    signs = [1 if j % 2 == 0 else -1 for j in range(k)]
    t = 2.0 * math.pi * (np.arange(n) + 0.5) / n
    x = 0.5 * k * (1.0 - np.cos(t))
    g = np.zeros(n)
    fwd = t <= math.pi
    tf = t[fwd]
    hump = np.minimum((tf / (math.pi / k)).astype(int), k - 1)
    amp = np.array([signs[j] * amplitudes[j] for j in range(k)])
    g[fwd] = amp[hump] * np.sin(k * tf - hump * math.pi)
    tb = 2.0 * math.pi - t[~fwd]
    hump_b = np.minimum((tb / (math.pi / k)).astype(int), k - 1)
    g[~fwd] = -amp[hump_b] * np.sin(k * tb - hump_b * math.pi)
    return np.column_stack([x, g]), signs


def _chain_lift(k: int, n: int, forward_over: list[bool]) -> np.ndarray:
    lift = np.zeros(n)
    width = max(2, n // (16 * k))
    for j in range(1, k):
        tj = math.pi * j / k
        up = 1.0 if forward_over[j - 1] else -1.0
        for center, u in (
            (tj * n / (2.0 * math.pi) - 0.5, up),
            ((2.0 * math.pi - tj) * n / (2.0 * math.pi) - 0.5, -up),
        ):
            c = int(round(center))
            for v in range(c - width, c + width + 1):
                w = 1.0 - abs(v - center) / (width + 1.0)
                if w > 0:
                    lift[v % n] += u * w
    return lift


def _chain_diagram(
    crossing_signs: list[int],
    lobes: list[Fraction],
    points_per_lobe: int = 192,
) -> SliceDiagram:
    k = len(lobes)
    if len(crossing_signs) != k - 1:
        raise CatalogConstraintError("need one crossing sign per adjacent lobe pair")
    n = points_per_lobe * k
    n += (-n) % 16  # keep sample params clear of crossing params

    # Lens areas are nearly linear in the hump amplitudes (crossing points
    # wobble slightly as slopes change), so fit them by a damped fixpoint.
    hump_signs = [1 if j % 2 == 0 else -1 for j in range(k)]
    forward_over = [crossing_signs[j] == -hump_signs[j] for j in range(k - 1)]
    lift = _chain_lift(k, n, forward_over)
    amplitudes = [1.0] * k
    diagram = None
    faces = None
    for _ in range(24):
        verts, _ = _chain_profile(k, amplitudes, n)
        diagram = SliceDiagram.build([PlanarPolyline(verts, lift)], CATALOG_TOLERANCE)
        faces = sorted(
            (f for f in diagram.arrangement.faces if f.bounded),
            key=lambda f: float(f.polygon[:, 0].min()),
        )
        if len(faces) != k:
            raise GeometryError(
                f"chain realisation produced {len(faces)} lobes, wanted {k}"
            )
        rel = max(
            abs(float(f.area) - float(t)) / float(t) for f, t in zip(faces, lobes)
        )
        if rel < 1e-13:
            break
        amplitudes = [
            a * float(t) / float(f.area) for a, f, t in zip(amplitudes, faces, lobes)
        ]
    rel = max(abs(float(f.area) - float(t)) / float(t) for f, t in zip(faces, lobes))
    if rel > 1e-9:
        raise GeometryError(f"lobe area off by {rel:.2e} relative")
    for f, target in zip(faces, lobes):
        f.area = target
    refresh_true_areas(diagram.arrangement)
    if len(diagram.crossings) != k - 1:
        raise GeometryError("chain realisation has wrong crossing count")
    for c, want in zip(diagram.crossings, crossing_signs):
        if c.sign != want:
            raise GeometryError("chain realisation produced wrong crossing sign")
    return diagram


def _squish(diagram: SliceDiagram, factor: float) -> SliceDiagram:
    """Unit-determinant axis squish diag(factor, 1/factor)."""
    out = transform_diagram(diagram, np.array([[factor, 0.0], [0.0, 1.0 / factor]]))
    _restore_exact_areas(out, diagram)
    return out


def _restore_exact_areas(new: SliceDiagram, old: SliceDiagram) -> None:
    exact = [f.area for f in old.arrangement.faces if isinstance(f.area, Fraction)]
    for f in sorted(
        (f for f in new.arrangement.faces if f.bounded), key=lambda f: float(f.area)
    ):
        for q in sorted(exact, key=float):
            if abs(float(q) - float(f.area)) <= 1e-7 * max(1.0, float(q)):
                f.area = q
                exact.remove(q)
                break
    refresh_true_areas(new.arrangement)


def _deep_interior_point(polygon: np.ndarray) -> tuple[tuple[float, float], float]:
    """Interior point with roughly maximal clearance, by coarse grid search."""
    x0, y0 = polygon.min(axis=0)
    x1, y1 = polygon.max(axis=0)
    best, best_r = None, -1.0
    for gx in np.linspace(x0, x1, 25)[1:-1]:
        for gy in np.linspace(y0, y1, 25)[1:-1]:
            if point_in_polygon(polygon, (gx, gy)):
                r = point_polygon_clearance(polygon, (gx, gy))
                if r > best_r:
                    best, best_r = (float(gx), float(gy)), r
    if best is None:
        raise GeometryError("no interior point found")
    return best, best_r


def _realize_nest(inner_spec, outer_spec) -> SliceDiagram:
    inner = realize_catalog(inner_spec)
    outer = realize_catalog(outer_spec)
    inner_fill = sum(
        float(f.area) for f in inner.arrangement.faces if f.bounded
    )
    target = min(
        (f for f in outer.arrangement.faces if f.bounded),
        key=lambda f: float(f.polygon[:, 0].min()),
    )
    if inner_fill >= float(target.area):
        raise CatalogConstraintError(
            "inner diagram fills more area than the hosting lobe of the outer diagram"
        )

    for attempt in range(3):
        # Square up the hosting lobe, then the inner bundle, then drop it in.
        w = float(target.polygon[:, 0].max() - target.polygon[:, 0].min())
        h = float(target.polygon[:, 1].max() - target.polygon[:, 1].min())
        outer_sq = _squish(outer, math.sqrt(h / w))
        target_sq = min(
            (f for f in outer_sq.arrangement.faces if f.bounded),
            key=lambda f: float(f.polygon[:, 0].min()),
        )
        center, clearance = _deep_interior_point(target_sq.polygon)
        side = (2.0 * clearance / math.sqrt(2.0)) * (0.85 - 0.25 * attempt)

        iw = max(c.bbox()[2] for c in inner.components) - min(
            c.bbox()[0] for c in inner.components
        )
        ih = max(c.bbox()[3] for c in inner.components) - min(
            c.bbox()[1] for c in inner.components
        )
        if iw * ih > side * side:
            continue
        inner_sq = _squish(inner, math.sqrt(side / iw * ih / side))
        boxes = [c.bbox() for c in inner_sq.components]
        cx = (min(b[0] for b in boxes) + max(b[2] for b in boxes)) / 2.0
        cy = (min(b[1] for b in boxes) + max(b[3] for b in boxes)) / 2.0
        comps = list(outer_sq.components) + [
            PlanarPolyline(
                c.vertices + np.array([center[0] - cx, center[1] - cy]), c.lift, c.closed
            )
            for c in inner_sq.components
        ]
        try:
            combined = SliceDiagram.build(
                comps,
                CATALOG_TOLERANCE,
                catalog_label=f"nest({inner_spec.label()},{outer_spec.label()})",
            )
        except GeometryError:
            continue
        if len(combined.crossings) != len(inner.crossings) + len(outer.crossings):
            continue
        _restore_exact_areas(combined, outer)
        _restore_exact_areas(combined, inner)
        return combined
    raise CatalogConstraintError(
        "could not place the inner diagram inside the outer lobe; "
        "increase the outer area relative to the inner one"
    )


def _realize_merge(areas: tuple[Fraction, Fraction, Fraction]) -> SliceDiagram:
    from .merge_shape import realize_merge

    return realize_merge(areas)


def realize_catalog(spec: CatalogSpec) -> SliceDiagram:
    """Build the model diagram of a catalog expression.

    Region areas of the result match the expression exactly (the float
    geometry is verified to 1e-9 relative, then the exact rational areas are
    attached to the faces).
    """
    if isinstance(spec, EightPlus):
        d = _chain_diagram([1], [spec.area, spec.area])
    elif isinstance(spec, EightMinus):
        d = _chain_diagram([-1], [spec.area, spec.area])
    elif isinstance(spec, Cat):
        a1, a2, a3 = spec.areas
        a4 = a1 - a2 + a3
        if a4 <= 0:
            raise CatalogConstraintError("caterpillar needs A1 - A2 + A3 > 0")
        d = _chain_diagram(list(spec.signs), [a1, a2, a3, a4])
    elif isinstance(spec, Sum):
        d = None
        for part in spec.parts:
            d = realize_catalog(part) if d is None else sum_diagrams(d, realize_catalog(part))
    elif isinstance(spec, Nest):
        d = _realize_nest(spec.inner, spec.outer)
    elif isinstance(spec, Merge):
        d = _realize_merge(spec.areas)
    else:
        raise TypeError(f"not a catalog spec: {spec!r}")
    d.catalog_label = spec.label()
    return d


def realize(text_or_spec) -> SliceDiagram:
    if isinstance(text_or_spec, str):
        return realize_catalog(parse_catalog(text_or_spec))
    return realize_catalog(text_or_spec)
