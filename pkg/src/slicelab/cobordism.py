"""Obstructions to the slice relations (non-strict and strict).

For a cobordism between levels a < b of one Lagrangian, the four capacities
of the diagonal degree-0 class are ordered: c+ and C+ grow upward, c- and
C- grow downward, strictly whenever either side is nonzero.  A query
compares the forced capacities of its two ends against these inequalities;
any violation is a definite obstruction.  When the ends are not equivalent
the two levels must differ, so the strict form of the inequalities applies
even to non-strict queries.  The engine never asserts that a relation does
hold; positive answers come from numerical witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .capacities import CAPACITIES, CapacityReport, analyze
from .diagram import SliceDiagram
from .equivalence import equivalent
from .morse import morse_table


class NonGenericEnd(Exception):
    """An end of the query has a non-generic critical-value collision."""


@dataclass(frozen=True)
class RelationQuery:
    bottom: SliceDiagram
    top: SliceDiagram
    strict: bool = False


@dataclass(frozen=True)
class Violation:
    capacity: str
    class_label: str
    bottom: object
    top: object
    strict: bool

    def to_json_dict(self) -> dict:
        return {
            "capacity": self.capacity,
            "class": self.class_label,
            "bottom": float(self.bottom),
            "top": float(self.top),
            "strict": self.strict,
        }


@dataclass(frozen=True)
class RelationVerdict:
    kind: str  # "obstructed" | "reflexive-equivalent" | "no-obstruction-found" | "witnessed"
    violation: Violation | None = None
    detail: str | None = None

    def to_json_dict(self) -> dict:
        out = {"result": self.kind}
        if self.violation is not None:
            out.update(self.violation.to_json_dict())
        if self.detail:
            out["detail"] = self.detail
        return out


# (capacity, direction): bottom <= top for +1, bottom >= top for -1.
_MONOTONE = (("c+", +1), ("C+", +1), ("c-", -1), ("C-", -1))


def _forced_diagonal(report: CapacityReport):
    diag = report.diagonal()
    if diag is None:
        return {}
    out = {}
    for cap in CAPACITIES:
        st = diag.status[cap]
        if st.forced:
            out[cap] = st.forced_value()
    return out


def check_relation(
    query: RelationQuery, compare_degree_one: bool = False
) -> RelationVerdict:
    """Monotonicity-based obstruction check for bottom (<=/<) top.

    ``compare_degree_one`` additionally compares the per-component degree-1
    capacities; it is off by default since pulling degree-1 classes through
    a cobordism assumes more about its topology.
    """
    bottom, top = query.bottom, query.top
    if bottom.is_empty:
        return RelationVerdict("no-obstruction-found", detail="empty bottom")
    if not top.is_empty and equivalent(bottom, top) and not query.strict:
        return RelationVerdict("reflexive-equivalent")

    rb, vb = analyze(bottom, assume_negative_slice=True)
    rt, vt = analyze(top, assume_negative_slice=True)
    for vd, side in ((vb, "bottom"), (vt, "top")):
        if vd.kind == "non-generic":
            raise NonGenericEnd(f"{side} end is non-generic")
    for vd, side in ((vb, "bottom"), (vt, "top")):
        if vd.kind == "impossible":
            return RelationVerdict(
                "obstructed",
                detail=f"{side} end cannot be a negative slice "
                f"(witness {vd.witness.label()})",
            )

    ends_equivalent = not top.is_empty and equivalent(bottom, top)
    force_strict = query.strict or not ends_equivalent

    pairs = [(_forced_diagonal(rb), _forced_diagonal(rt), "diagonal-H0")]
    if compare_degree_one:
        db = {cs.cls.label(): cs for cs in rb.classes if cs.cls.degree == 1}
        dt = {cs.cls.label(): cs for cs in rt.classes if cs.cls.degree == 1}
        for label in sorted(set(db) & set(dt)):
            fb = {
                cap: db[label].status[cap].forced_value()
                for cap in CAPACITIES
                if db[label].status[cap].forced
            }
            ft = {
                cap: dt[label].status[cap].forced_value()
                for cap in CAPACITIES
                if dt[label].status[cap].forced
            }
            pairs.append((fb, ft, label))

    for fb, ft, label in pairs:
        for cap, direction in _MONOTONE:
            if cap not in fb or cap not in ft:
                continue
            lo, hi = fb[cap], ft[cap]
            ok_weak = lo <= hi if direction > 0 else lo >= hi
            nonzero = lo != 0 or hi != 0
            if not ok_weak:
                return RelationVerdict(
                    "obstructed",
                    violation=Violation(cap, label, lo, hi, strict=False),
                )
            if force_strict and nonzero and lo == hi:
                return RelationVerdict(
                    "obstructed",
                    violation=Violation(cap, label, lo, hi, strict=True),
                )
    return RelationVerdict("no-obstruction-found")


@dataclass(frozen=True)
class SumCompatibilityResult:
    q1: RelationVerdict
    q2: RelationVerdict
    summed: RelationVerdict | None
    consistent: bool


def sum_compatibility(q1: RelationQuery, q2: RelationQuery) -> SumCompatibilityResult:
    """Check that unobstructed strict relations stay unobstructed under +.

    An obstruction appearing on the summed query while both inputs pass is
    an engine bug (strict relations are compatible with the monoid sum).
    """
    from .diagram import sum_diagrams

    v1 = check_relation(q1)
    v2 = check_relation(q2)
    if v1.kind == "obstructed" or v2.kind == "obstructed":
        return SumCompatibilityResult(v1, v2, None, consistent=True)
    summed = RelationQuery(
        sum_diagrams(q1.bottom, q2.bottom),
        sum_diagrams(q1.top, q2.top),
        strict=True,
    )
    vs = check_relation(summed)
    return SumCompatibilityResult(v1, v2, vs, consistent=vs.kind != "obstructed")


def strict_chain_bound(diagram: SliceDiagram) -> int:
    """Upper bound on the length of a strict chain within one equivalence class.

    Equals j + 1 where j is the number of distinct negative critical values;
    each negative value can serve as a strictly decreasing lower capacity at
    most once along such a chain.  Symbolic rows (crossings between
    components) each add one to the bound, making it an upper estimate.
    """
    if diagram.is_empty:
        return 1
    table = morse_table(diagram)
    negatives = {v for v in (r.value for r in table.numeric_rows()) if v < 0}
    symbolic_pairs = len({r.pair_id for r in table.crossing_rows() if r.symbolic})
    return len(negatives) + symbolic_pairs + 1


def antisymmetry_check(d1: SliceDiagram, d2: SliceDiagram) -> bool:
    """True when a mutual relation between the two ends is excluded.

    Obstruction of either direction suffices, as does a capacity forced to
    the same nonzero value on both ends (a strictly monotone quantity cannot
    both rise and fall).  Equivalent ends are out of scope (the relation is
    reflexive there) and Unknown capacities never justify a True.
    """
    if d1.is_empty or d2.is_empty:
        return False
    if equivalent(d1, d2):
        return False
    try:
        fwd = check_relation(RelationQuery(d1, d2, strict=False))
        bwd = check_relation(RelationQuery(d2, d1, strict=False))
    except NonGenericEnd:
        return False
    if fwd.kind == "obstructed" or bwd.kind == "obstructed":
        return True
    r1, _ = analyze(d1)
    r2, _ = analyze(d2)
    f1, f2 = _forced_diagonal(r1), _forced_diagonal(r2)
    for cap in CAPACITIES:
        if cap in f1 and cap in f2 and f1[cap] == f2[cap] != Fraction(0):
            return True
    return False
