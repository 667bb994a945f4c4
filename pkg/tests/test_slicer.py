import numpy as np
import pytest

from slicelab.contour import BoundaryContact, Grid, marching_squares
from slicelab.families import BumpTerm, GeneratingFamily
from slicelab.presets import load_preset
from slicelab.slicer import NonGenericLevel, extract_slice, sweep, witness_relation

EIGHT = GeneratingFamily((BumpTerm(1.0, 0.0, 0.0, 1.0, 1.0),))


class TestMarchingSquares:
    def test_circle_level_set(self):
        grid = Grid(-2.0, -2.0, 2.0, 2.0, 64, 64)
        loops = marching_squares(lambda x, y: x * x + y * y, grid, 1.0)
        assert len(loops) == 1
        loop = loops[0]
        r = np.hypot(loop[:, 0], loop[:, 1])
        assert np.all(np.abs(r - 1.0) < 0.01)

    def test_loops_close(self):
        grid = Grid(-2.0, -2.0, 2.0, 2.0, 64, 64)
        loops = marching_squares(lambda x, y: x * x + 2 * y * y, grid, 1.0)
        loop = loops[0]
        gap = np.hypot(*(loop[0] - loop[-1]))
        assert gap < grid.cell_diagonal * 1.001

    def test_boundary_contact_raises(self):
        # Radius ~0.55 circle pokes through the walls of a half-unit box.
        grid = Grid(-0.5, -0.5, 0.5, 0.5, 32, 32)
        with pytest.raises(BoundaryContact):
            marching_squares(lambda x, y: x * x + y * y, grid, 0.3)

    def test_area_converges_first_order(self):
        # Doubling the resolution must at least halve the area error.
        errs = []
        for n in (32, 64, 128):
            grid = Grid(-2.0, -2.0, 2.0, 2.0, n, n)
            loop = marching_squares(lambda x, y: x * x + y * y, grid, 1.0)[0]
            x, y = loop[:, 0], loop[:, 1]
            area = 0.5 * abs(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
            errs.append(abs(area - np.pi))
        assert errs[1] <= errs[0] / 2.0
        assert errs[2] <= errs[1] / 2.0


class TestExtract:
    def test_zero_family_empty(self):
        res = extract_slice(GeneratingFamily(()), -0.5)
        assert res.is_empty
        assert res.classification.family == "empty"

    def test_below_range_empty(self):
        res = extract_slice(EIGHT, -5.0)
        assert res.is_empty

    def test_positive_level_rejected(self):
        with pytest.raises(ValueError):
            extract_slice(EIGHT, 0.5)

    def test_eight_classification(self):
        res = extract_slice(EIGHT, -0.12, grid_n=256)
        assert res.classification.family == "8+"
        assert len(res.diagram.crossings) == 1
        assert res.diagram.crossings[0].sign == 1
        assert res.diagram.is_valid()

    def test_near_birth_flagged(self):
        with pytest.raises(NonGenericLevel):
            extract_slice(EIGHT, -0.2935, grid_n=256)

    def test_crossing_lift_separation_exceeds_tolerance(self):
        res = extract_slice(EIGHT, -0.12, grid_n=256)
        c = res.diagram.crossings[0]
        assert abs(c.lifts[0] - c.lifts[1]) > res.tolerance

    def test_validity_residual_halves_with_resolution(self):
        r1 = extract_slice(EIGHT, -0.12, grid_n=128)
        r2 = extract_slice(EIGHT, -0.12, grid_n=256)
        res1 = r1.diagram.validity_report()[0].area_residual
        res2 = r2.diagram.validity_report()[0].area_residual
        assert res2 <= res1 / 2.0


class TestSweep:
    def test_empty_below_range(self):
        res = sweep(EIGHT, -6.0, -4.0, 5, grid_n=64)
        assert all(s["classification"] == "empty" for s in res.summaries)
        assert res.events == []

    def test_birth_event_bracketed(self):
        res = sweep(EIGHT, -0.32, -0.05, 10, grid_n=128)
        assert res.events, "expected the empty-to-eight birth event"
        ev = res.events[0]
        assert ev.before.endswith("empty")
        assert ev.after.endswith("8+")
        assert ev.bracket[0] < -0.29 < ev.bracket[1]

    def test_areas_nondecreasing_in_level(self):
        res = sweep(EIGHT, -0.25, -0.02, 8, grid_n=128)
        areas = []
        for s in res.summaries:
            if s["family"] == "8+":
                areas.append(float(s["classification"].split("(")[1].rstrip(")")))
        assert areas == sorted(areas)

    def test_bad_range_rejected(self):
        with pytest.raises(ValueError):
            sweep(EIGHT, -0.1, -0.2, 5)


class TestWitness:
    def test_eight_growth_witness(self):
        w = witness_relation(EIGHT, -0.15, -0.08, grid_n=128)
        ab = w.bottom.classification.areas[0]
        at = w.top.classification.areas[0]
        assert w.bottom.classification.family == "8+"
        assert w.top.classification.family == "8+"
        assert ab < at

    def test_empty_bottom_witness(self):
        w = witness_relation(EIGHT, -1.0, -0.1, grid_n=128)
        assert w.bottom.is_empty
        assert not w.top.is_empty

    def test_order_validated(self):
        with pytest.raises(ValueError):
            witness_relation(EIGHT, -0.05, -0.1)


class TestPresets:
    @pytest.mark.parametrize("name", ["P-eight", "P-sum", "P-seq", "P-seq-top", "P-link"])
    def test_preset_documented_level_classifies(self, name):
        p = load_preset(name)
        res = extract_slice(p.family, p.level, grid_n=p.grid)
        assert res.classification.family == p.expect["family"]
        assert len(res.diagram.components) == p.expect["components"]
        assert len(res.diagram.crossings) == p.expect["crossings"]

    def test_seq_preset_shows_column_sequence(self):
        p = load_preset("P-seq")
        res = sweep(p.family, p.sweep_from, p.sweep_to, p.sweep_steps, grid_n=p.grid)
        fams = [s["family"] for s in res.summaries]
        # empty -> 8+ -> 8+ + 8+ -> caterpillar, in level order.
        i_empty = fams.index("empty")
        i_sum = fams.index("8+ + 8+")
        i_cat = fams.index("C(+,-,+)")
        assert i_empty < i_sum < i_cat

    def test_seq_top_preset_ends_in_eight(self):
        p = load_preset("P-seq-top")
        res = sweep(p.family, p.sweep_from, p.sweep_to, p.sweep_steps, grid_n=p.grid)
        fams = [s["family"] for s in res.summaries]
        assert "C(+,-,+)" in fams
        assert fams[-1] == "8+"
        assert fams.index("C(+,-,+)") < len(fams) - 1
