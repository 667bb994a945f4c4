from fractions import Fraction

import numpy as np
import pytest

from slicelab.capacities import (
    CAPACITIES,
    analyze,
    candidate_values,
    classes_for,
    connect_sum_analysis,
)
from slicelab.catalog import realize
from slicelab.diagram import EMPTY_DIAGRAM, PlanarPolyline, SliceDiagram, sum_diagrams
from slicelab.morse import morse_table


def diag_status(report):
    return report.diagonal().status


def forced(report, cap):
    return diag_status(report)[cap].forced_value()


class TestCandidates:
    def test_eight_plus_degree0(self):
        t = morse_table(realize("8+(1)"))
        cls = classes_for(1)[0]
        vals, wild = candidate_values(t, cls, "c-")
        assert vals == (Fraction(-1),)
        assert not wild
        vals, _ = candidate_values(t, cls, "C+")
        assert vals == ()

    def test_capcat_degree0(self):
        t = morse_table(realize("C(+,-,+;1,2,2)"))
        cls = classes_for(1)[0]
        vals, _ = candidate_values(t, cls, "c-")
        assert vals == (Fraction(-1),)


class TestAnalyzeFixtures:
    def test_eight_plus_forces_all_four(self):
        rep, verdict = analyze(realize("8+(1)"))
        assert verdict.kind == "no-obstruction"
        assert forced(rep, "c+") == 0
        assert forced(rep, "c-") == Fraction(-1)
        assert forced(rep, "C+") == 0
        assert forced(rep, "C-") == 0
        h1 = rep.get("H1[0]", "C+")
        assert h1.forced_value() == Fraction(1)

    def test_eight_minus_impossible_with_assumption(self):
        rep, verdict = analyze(realize("8-(1)"), assume_negative_slice=True)
        assert verdict.kind == "impossible"
        assert verdict.witness.is_diagonal

    def test_eight_minus_conditional_without_assumption(self):
        rep, verdict = analyze(realize("8-(1)"), assume_negative_slice=False)
        assert verdict.kind == "no-obstruction"
        assert diag_status(rep)["c+"].candidate_set() == {Fraction(-1)}
        assert rep.get("H1[0]", "C-").candidate_set() == {Fraction(1)}

    @pytest.mark.parametrize(
        "expr",
        ["C(-,+,-;3,1,2)", "C(-,-,-;3,1,2)", "C(-,-,-;1,3,3)"],
    )
    def test_impossible_caterpillars(self, expr):
        _, verdict = analyze(realize(expr))
        assert verdict.kind == "impossible"

    def test_all_minus_uses_rank_surjection_when_a1_gt_a2(self):
        rep, verdict = analyze(realize("C(-,-,-;3,1,2)"))
        assert verdict.kind == "impossible"
        assert any("rank-surjection" in s for s in diag_status(rep)["C+"].chain)

    def test_all_minus_index_branch_when_a1_le_a2(self):
        rep, verdict = analyze(realize("C(-,-,-;1,3,3)"))
        assert verdict.kind == "impossible"
        assert any("cap-calc" in s for s in diag_status(rep)["C+"].chain)

    def test_capcat_forces_minus_area(self):
        rep, verdict = analyze(realize("C(+,-,+;1,2,2)"))
        assert verdict.kind == "no-obstruction"
        assert forced(rep, "c-") == Fraction(-1)

    def test_plus_plus_plus_not_obstructed(self):
        _, verdict = analyze(realize("C(+,+,+;1,2,2)"))
        assert verdict.kind == "no-obstruction"

    def test_sum_of_eights_diagonal(self):
        d = sum_diagrams(realize("8+(1)"), realize("8+(1)"))
        rep, verdict = analyze(d)
        assert verdict.kind == "no-obstruction"
        assert forced(rep, "c-") == Fraction(-1)

    def test_rank_surjection_inapplicable_for_eight(self):
        rep, _ = analyze(realize("8+(1)"))
        assert all("rank" not in s for s in diag_status(rep)["C+"].chain)

    def test_non_generic_verdict_on_value_collision(self):
        _, verdict = analyze(realize("C(-,+,-;2,2,1)"))
        assert verdict.kind == "non-generic"

    def test_empty_diagram(self):
        rep, verdict = analyze(EMPTY_DIAGRAM)
        assert verdict.kind == "no-obstruction"
        assert rep.classes == []


class TestFixpoint:
    def _snapshot(self, rep):
        return [
            (cs.cls.label(), cap, cs.status[cap].kind, cs.status[cap].forced_value())
            for cs in rep.classes
            for cap in CAPACITIES
        ]

    def test_rerunning_pipeline_is_idempotent(self):
        from slicelab.capacities import run_pipeline

        rep, _ = analyze(realize("C(+,-,+;1,2,2)"))
        snapshot = self._snapshot(rep)
        run_pipeline(rep)
        assert self._snapshot(rep) == snapshot

    def test_idempotent_on_random_catalog_diagrams(self, realize_random):
        from slicelab.capacities import run_pipeline
        from slicelab.morse import morse_table

        for _ in range(8):
            d = realize_random()
            if morse_table(d).non_generic:
                continue
            rep, _ = analyze(d)
            snapshot = self._snapshot(rep)
            run_pipeline(rep)
            assert self._snapshot(rep) == snapshot


class TestConservativity:
    def overlapping_pair(self):
        base = realize("8+(1)")
        shifted = [
            PlanarPolyline(c.vertices + np.array([0.35, 0.1]), c.lift + 5.0, c.closed)
            for c in base.components
        ]
        return SliceDiagram.build(list(base.components) + shifted, tolerance=1e-9)

    def test_wildcards_block_impossible(self):
        d = self.overlapping_pair()
        table = morse_table(d)
        assert table.has_symbolic
        _, verdict = analyze(d)
        assert verdict.kind != "impossible"


class TestConnectSum:
    def test_eight_minus_plus_eight_plus_impossible(self):
        _, verdict = connect_sum_analysis(realize("8-(1)"), realize("8+(2)"))
        assert verdict.kind == "impossible"
        assert verdict.as_connect_sum

    def test_two_positive_eights_fine(self):
        rep, verdict = connect_sum_analysis(realize("8+(1)"), realize("8+(1)"))
        assert verdict.kind == "no-obstruction"
        assert forced(rep, "c-") == Fraction(-1)

    def test_empty_summand_reduces_to_analyze(self):
        rep, verdict = connect_sum_analysis(realize("8-(1)"), EMPTY_DIAGRAM)
        assert verdict.kind == "impossible"


class TestMirroredRule:
    def test_off_by_default_and_harmless_when_on(self):
        rep_off, v_off = analyze(realize("C(+,-,+;1,2,2)"))
        rep_on, v_on = analyze(
            realize("C(+,-,+;1,2,2)"), enable_mirrored_rank_rule=True
        )
        assert v_off.kind == v_on.kind == "no-obstruction"
        # The mirrored rule may add a forcing chain but must not change values.
        assert (
            rep_off.diagonal().status["c-"].forced_value()
            == rep_on.diagonal().status["c-"].forced_value()
        )


def test_report_json_shape():
    rep, verdict = analyze(realize("8+(1)"))
    data = rep.to_json_dict(verdict)
    assert data["verdict"]["result"] == "no-obstruction"
    cls0 = data["classes"][0]
    assert cls0["diagonal"] is True
    assert cls0["c-"]["status"] == "forced-value"
    assert cls0["c-"]["value"] == -1.0
    assert any("cap-calc" in s for s in cls0["c+"]["chain"])
