"""Forcing-rule engine for the four capacities of a slice diagram.

For a cohomology class of degree k, the lower capacities c+/c- can only take
negative critical values sitting in P+/P- at index offset k, and the upper
capacities C+/C- positive values at offset k+2; empty candidate sets force
the capacity to zero.  Three axioms sharpen this:

* pullback vanishing: on the diagonal degree-0 class of an actual negative
  slice, c+ = 0 and C- = 0 (the slice is empty far below);
* rank surjection: for a connected slice and the degree-0 class, C+ = 0
  whenever every positive offset-3 value strictly exceeds every positive
  offset-2 value and there are more positive offset-3 values than the rank
  of H^1 (which is 1);
* non-vanishing: for every nonzero class of a nonempty slice at least one
  of the four capacities is nonzero, so three forced zeros pin the fourth
  to its candidate set.

A class with all four capacities forced to zero is a witness that the
diagram cannot be a negative slice.  Symbolic rows (crossings between
components) act as wildcards: they block the zero-forcing rules at their
location, and with wildcards in play the engine never reports Impossible.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .diagram import SliceDiagram, sum_diagrams
from .morse import MorseTable, morse_table

CAPACITIES = ("c+", "c-", "C+", "C-")


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    support: tuple[int, ...]
    is_diagonal: bool

    def label(self) -> str:
        if self.is_diagonal:
            return "diagonal-H0"
        comps = ",".join(str(c) for c in self.support)
        return f"H{self.degree}[{comps}]"


def classes_for(n_components: int) -> list[CohomologyClass]:
    """Per-component generators plus the diagonal class."""
    out: list[CohomologyClass] = []
    for i in range(n_components):
        out.append(CohomologyClass(0, (i,), is_diagonal=(n_components == 1)))
        out.append(CohomologyClass(1, (i,), is_diagonal=False))
    if n_components > 1:
        out.append(CohomologyClass(0, tuple(range(n_components)), is_diagonal=True))
    return out


@dataclass(frozen=True)
class CapacityStatus:
    kind: str  # "unknown" | "zero" | "value" | "candidates"
    value: object = None
    candidates: tuple = ()
    wildcard: bool = False
    chain: tuple[str, ...] = ()

    @property
    def forced(self) -> bool:
        return self.kind in ("zero", "value")

    def forced_value(self):
        if self.kind == "zero":
            return Fraction(0)
        if self.kind == "value":
            return self.value
        return None

    def candidate_set(self) -> frozenset:
        return frozenset(self.candidates)

    def to_json_dict(self) -> dict:
        out = {"status": {"zero": "forced-zero", "value": "forced-value"}.get(self.kind, self.kind)}
        if self.kind == "value":
            out["value"] = float(self.value)
        if self.candidates or self.kind == "candidates":
            out["candidates"] = sorted(float(v) for v in self.candidates)
        if self.wildcard:
            out["wildcard"] = True
        if self.chain:
            out["chain"] = list(self.chain)
        return out


def _fmtv(v) -> str:
    q = Fraction(v).limit_denominator(10**12) if not isinstance(v, Fraction) else v
    if q.denominator == 1:
        return str(q.numerator)
    return f"{float(v):g}"


def candidate_values(table: MorseTable, cls: CohomologyClass, capacity: str):
    """Candidate nonzero values of one capacity, plus a wildcard flag."""
    loc = "P+" if capacity.endswith("+") else "P-"
    lower = capacity.startswith("c")
    offset = cls.degree if lower else cls.degree + 2
    values = []
    wildcard = False
    for row in table.crossing_rows():
        if row.location != loc:
            continue
        if row.symbolic:
            wildcard = True
            continue
        if row.index_offset != offset:
            continue
        v = row.value
        if (lower and v < 0) or (not lower and v > 0):
            values.append(v)
    uniq = sorted(set(values))
    return tuple(uniq), wildcard


@dataclass
class ClassStatus:
    cls: CohomologyClass
    status: dict[str, CapacityStatus] = field(default_factory=dict)

    def all_forced_zero(self) -> bool:
        return all(self.status[c].kind == "zero" for c in CAPACITIES)


@dataclass
class CapacityReport:
    table: MorseTable
    assume_negative_slice: bool
    classes: list[ClassStatus]
    notes: list[str] = field(default_factory=list)

    def get(self, cls_label: str, capacity: str) -> CapacityStatus:
        for c in self.classes:
            if c.cls.label() == cls_label:
                return c.status[capacity]
        raise KeyError(cls_label)

    def diagonal(self) -> ClassStatus | None:
        for c in self.classes:
            if c.cls.is_diagonal:
                return c
        return None

    def to_json_dict(self, verdict: "SliceVerdict | None" = None) -> dict:
        classes = []
        for c in self.classes:
            entry = {
                "degree": c.cls.degree,
                "support": list(c.cls.support),
                "diagonal": c.cls.is_diagonal,
            }
            for cap in CAPACITIES:
                entry[cap] = c.status[cap].to_json_dict()
            classes.append(entry)
        out = {"classes": classes, "assume_negative_slice": self.assume_negative_slice}
        if verdict is not None:
            out["verdict"] = verdict.to_json_dict()
        return out


@dataclass(frozen=True)
class SliceVerdict:
    kind: str  # "impossible" | "no-obstruction" | "non-generic"
    witness: CohomologyClass | None = None
    chain: tuple[str, ...] = ()
    as_connect_sum: bool = False

    def to_json_dict(self) -> dict:
        out = {"result": self.kind}
        if self.witness is not None:
            out["witness_class"] = self.witness.label()
        if self.chain:
            out["chain"] = list(self.chain)
        if self.as_connect_sum:
            out["as_connect_sum"] = True
        return out


def _init_report(table: MorseTable, assume: bool) -> CapacityReport:
    classes = []
    for cls in classes_for(table.topology.components):
        st = {}
        for cap in CAPACITIES:
            cands, wildcard = candidate_values(table, cls, cap)
            st[cap] = CapacityStatus("unknown", candidates=cands, wildcard=wildcard)
        classes.append(ClassStatus(cls, st))
    return CapacityReport(table, assume, classes)


def apply_index_vanishing(report: CapacityReport) -> CapacityReport:
    """Empty candidate sets force the capacity to zero."""
    for cs in report.classes:
        for cap in CAPACITIES:
            st = cs.status[cap]
            if st.kind == "unknown" and not st.wildcard and not st.candidates:
                loc = "P+" if cap.endswith("+") else "P-"
                lower = cap.startswith("c")
                off = cs.cls.degree if lower else cs.cls.degree + 2
                cs.status[cap] = replace(
                    st, kind="zero", chain=(f"cap-calc({loc},offset{off},empty)",)
                )
    return report


def apply_pullback_vanishing(report: CapacityReport) -> CapacityReport:
    """c+ and C- vanish on the diagonal class of an assumed negative slice."""
    if not report.assume_negative_slice:
        return report
    for cs in report.classes:
        if not cs.cls.is_diagonal:
            continue
        for cap in ("c+", "C-"):
            st = cs.status[cap]
            if st.kind == "value":
                raise RuntimeError("pullback rule contradicts an earlier forcing")
            if st.kind != "zero":
                cs.status[cap] = replace(
                    st, kind="zero", chain=("pullback-vanishing(diagonal-H0)",)
                )
    return report


def apply_rank_surjection(
    report: CapacityReport, enable_mirrored_rule: bool = False
) -> CapacityReport:
    """Force C+ = 0 under the offset-3-over-offset-2 hypothesis.

    Applies only to connected slices and the degree-0 class, and only when
    the table has no symbolic rows.  The mirrored forcing of c- through the
    coordinate-swap symmetry is available behind a flag but off by default.
    """
    table = report.table
    if table.topology.components != 1 or table.has_symbolic:
        return report
    rows = table.numeric_rows()
    pos3 = [r.value for r in rows if r.index_offset == 3 and r.value > 0]
    pos2 = [r.value for r in rows if r.index_offset == 2 and r.value > 0]
    for cs in report.classes:
        if cs.cls.degree != 0:
            continue
        st = cs.status["C+"]
        if not st.forced and pos2 and pos3:
            if min(pos3) > max(pos2) and len(pos3) > table.topology.h1:
                chain = (
                    f"rank-surjection(offset3>{_fmtv(max(pos2))},"
                    f"count{len(pos3)}>h1={table.topology.h1})",
                )
                cs.status["C+"] = replace(st, kind="zero", chain=chain)
        if enable_mirrored_rule:
            st = cs.status["c-"]
            neg0 = [r.value for r in rows if r.index_offset == 0 and r.value < 0]
            neg1 = [r.value for r in rows if r.index_offset == 1 and r.value < 0]
            if not st.forced and neg1 and neg0:
                if max(neg0) < min(neg1) and len(neg0) > table.topology.h1:
                    chain = (
                        f"rank-surjection-mirrored(offset0<{_fmtv(min(neg1))},"
                        f"count{len(neg0)}>h1={table.topology.h1})",
                    )
                    cs.status["c-"] = replace(st, kind="zero", chain=chain)
    return report


def apply_nonvanishing(report: CapacityReport) -> SliceVerdict | None:
    """Use non-vanishing per class; returns an Impossible verdict if found."""
    found: SliceVerdict | None = None
    for cs in report.classes:
        zeros = [cap for cap in CAPACITIES if cs.status[cap].kind == "zero"]
        if len(zeros) == 4:
            if found is None:
                chain = tuple(
                    f"{cap}:{';'.join(cs.status[cap].chain)}" for cap in CAPACITIES
                ) + ("non-vanishing(contradiction)",)
                found = SliceVerdict("impossible", witness=cs.cls, chain=chain)
            continue
        if len(zeros) == 3:
            cap = next(c for c in CAPACITIES if c not in zeros)
            st = cs.status[cap]
            if st.forced:
                continue
            if st.wildcard:
                cs.status[cap] = replace(
                    st, kind="candidates", chain=("non-vanishing(nonzero,wildcard)",)
                )
            elif len(st.candidates) == 1:
                cs.status[cap] = replace(
                    st,
                    kind="value",
                    value=st.candidates[0],
                    chain=(
                        f"non-vanishing(three-zero,unique-candidate={_fmtv(st.candidates[0])})",
                    ),
                )
            elif len(st.candidates) > 1:
                cs.status[cap] = replace(
                    st, kind="candidates", chain=("non-vanishing(nonzero)",)
                )
    return found


def _finalize(report: CapacityReport) -> None:
    for cs in report.classes:
        for cap in CAPACITIES:
            st = cs.status[cap]
            if st.kind == "unknown":
                cs.status[cap] = replace(st, kind="candidates")


def run_pipeline(
    report: CapacityReport, enable_mirrored_rule: bool = False
) -> SliceVerdict | None:
    """Iterate index -> pullback -> rank-surjection -> non-vanishing to a fixpoint."""
    verdict = None
    for _ in range(8):
        before = [
            (cs.cls.label(), cap, cs.status[cap].kind)
            for cs in report.classes
            for cap in CAPACITIES
        ]
        apply_index_vanishing(report)
        apply_pullback_vanishing(report)
        apply_rank_surjection(report, enable_mirrored_rule)
        v = apply_nonvanishing(report)
        if v is not None and verdict is None:
            verdict = v
        after = [
            (cs.cls.label(), cap, cs.status[cap].kind)
            for cs in report.classes
            for cap in CAPACITIES
        ]
        if before == after and (v is None or verdict is not None):
            break
    _finalize(report)
    return verdict


def analyze(
    diagram: SliceDiagram,
    assume_negative_slice: bool = True,
    enable_mirrored_rank_rule: bool = False,
) -> tuple[CapacityReport, SliceVerdict]:
    """Capacity report and slice-existence verdict for a diagram.

    With ``assume_negative_slice`` the pullback-vanishing rule is in force
    and a fully vanishing class yields an Impossible verdict; without it the
    report is the conditional one valid for any hypothetical realisation.
    """
    table = morse_table(diagram)
    report = _init_report(table, assume_negative_slice)
    if diagram.is_empty:
        return report, SliceVerdict("no-obstruction")
    if table.non_generic:
        run_pipeline_conservative(report)
        return report, SliceVerdict("non-generic")
    verdict = run_pipeline(report, enable_mirrored_rank_rule)
    if verdict is not None:
        return report, verdict
    return report, SliceVerdict("no-obstruction")


def run_pipeline_conservative(report: CapacityReport) -> None:
    """Candidates only; used when the table is non-generic."""
    _finalize(report)


def connect_sum_analysis(
    d1: SliceDiagram, d2: SliceDiagram
) -> tuple[CapacityReport, SliceVerdict]:
    """Realizability of d1 + d2 as a slice of a connect sum.

    Lower capacities of the combined diagonal class are the max of the
    pieces' forced diagonal values; upper capacities come from the index
    rule on the disjoint-union table; non-vanishing then gives the verdict.
    """
    if d1.is_empty and d2.is_empty:
        report, verdict = analyze(d1)
        return report, verdict
    if d1.is_empty:
        return analyze(d2)
    if d2.is_empty:
        return analyze(d1)

    piece_reports = []
    for d in (d1, d2):
        rep, verdict = analyze(d, assume_negative_slice=False)
        if verdict.kind == "non-generic":
            combined = sum_diagrams(d1, d2)
            report = _init_report(morse_table(combined), True)
            _finalize(report)
            return report, SliceVerdict("non-generic", as_connect_sum=True)
        piece_reports.append(rep)

    combined = sum_diagrams(d1, d2)
    table = morse_table(combined)
    report = _init_report(table, True)
    diag = report.diagonal()
    if diag is None:  # single component after summing cannot happen, but stay safe
        return report, SliceVerdict("no-obstruction", as_connect_sum=True)

    for cap in ("c+", "c-"):
        piece_status = []
        for rep in piece_reports:
            dcs = rep.diagonal()
            piece_status.append(dcs.status[cap] if dcs else None)
        if all(st is not None and st.forced for st in piece_status):
            values = [st.forced_value() for st in piece_status]
            m = max(values)
            chain = (f"split-max({cap},{','.join(_fmtv(v) for v in values)})",)
            if m == 0:
                diag.status[cap] = replace(diag.status[cap], kind="zero", chain=chain)
            else:
                diag.status[cap] = replace(
                    diag.status[cap], kind="value", value=m, chain=chain
                )

    apply_index_vanishing(report)
    verdict = apply_nonvanishing(report)
    _finalize(report)
    if verdict is not None:
        return report, SliceVerdict(
            "impossible", witness=verdict.witness, chain=verdict.chain, as_connect_sum=True
        )
    return report, SliceVerdict("no-obstruction", as_connect_sum=True)
