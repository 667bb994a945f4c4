from fractions import Fraction

import numpy as np
import pytest

from slicelab.catalog import realize
from slicelab.diagram import PlanarPolyline, SliceDiagram, sum_diagrams
from slicelab.morse import (
    SUBMANIFOLD,
    capping_index_offset,
    capping_value,
    location,
    morse_table,
)


def rows_of(table):
    return {
        (r.location, r.index_offset, r.value)
        for r in table.data
        if r.source != SUBMANIFOLD
    }


def test_cat_minus_plus_minus_table_exact():
    d = realize("C(-,+,-;3,1,2)")
    expected = {
        ("P-", 3, Fraction(3)),
        ("P+", 0, Fraction(-3)),
        ("P-", 2, Fraction(2)),
        ("P+", 1, Fraction(-2)),
        ("P-", 3, Fraction(4)),
        ("P+", 0, Fraction(-4)),
    }
    assert rows_of(morse_table(d)) == expected


def test_cat_all_minus_swaps_center_rows():
    d = realize("C(-,-,-;3,1,2)")
    expected = {
        ("P-", 3, Fraction(3)),
        ("P+", 0, Fraction(-3)),
        ("P+", 2, Fraction(2)),
        ("P-", 1, Fraction(-2)),
        ("P-", 3, Fraction(4)),
        ("P+", 0, Fraction(-4)),
    }
    assert rows_of(morse_table(d)) == expected


def test_eight_plus_table():
    d = realize("8+(1)")
    assert rows_of(morse_table(d)) == {
        ("P-", 0, Fraction(-1)),
        ("P+", 3, Fraction(1)),
    }


def test_eight_minus_table():
    d = realize("8-(1)")
    assert rows_of(morse_table(d)) == {
        ("P+", 0, Fraction(-1)),
        ("P-", 3, Fraction(1)),
    }


def test_capping_values_eight():
    d = realize("8+(5)")
    vals = sorted(capping_value(d, 0, b) for b in (0, 1))
    assert vals == [Fraction(-5), Fraction(5)]


def test_capping_values_cat_leftmost_and_center():
    d = realize("C(-,+,-;3,1,2)")
    assert sorted(capping_value(d, 0, b) for b in (0, 1)) == [-3, 3]
    assert sorted(capping_value(d, 1, b) for b in (0, 1)) == [-2, 2]


def test_offsets_cat_fixture():
    d = realize("C(-,+,-;3,1,2)")
    offsets = {}
    for ci in range(3):
        for b in (0, 1):
            offsets[(ci, location(d, ci, b))] = capping_index_offset(d, ci, b)
    assert offsets[(0, "P+")] == 0
    assert offsets[(1, "P+")] == 1
    assert offsets[(0, "P-")] == 3
    assert offsets[(1, "P-")] == 2


def test_submanifold_row():
    t = morse_table(realize("8+(1)"))
    sub = [r for r in t.data if r.source == SUBMANIFOLD]
    assert len(sub) == 1
    assert sub[0].value == 0
    assert sub[0].index_offset == 1


def test_topology_ranks():
    t = morse_table(realize("8+(1) + 8+(2)"))
    assert t.topology.components == 2
    assert t.topology.h0 == 2
    assert t.topology.h1 == 2


def test_pair_antisymmetry_exact_random(realize_random):
    for _ in range(10):
        d = realize_random()
        for ci in range(len(d.crossings)):
            v0 = capping_value(d, ci, 0)
            v1 = capping_value(d, ci, 1)
            assert v0 + v1 == 0
            o0 = capping_index_offset(d, ci, 0)
            o1 = capping_index_offset(d, ci, 1)
            assert o0 + o1 == 3
            assert o0 in (0, 1, 2, 3)


def test_arc_independence(realize_random):
    for _ in range(6):
        d = realize_random()
        for ci in range(len(d.crossings)):
            for b in (0, 1):
                assert capping_value(d, ci, b, "forward") == capping_value(
                    d, ci, b, "other"
                )
                assert capping_index_offset(d, ci, b, "forward") == (
                    capping_index_offset(d, ci, b, "other")
                )


def test_locations_are_opposite(realize_random):
    d = realize_random()
    for ci in range(len(d.crossings)):
        assert {location(d, ci, 0), location(d, ci, 1)} == {"P+", "P-"}


def test_intercomponent_rows_symbolic():
    base = realize("8+(1)")
    shifted = [
        PlanarPolyline(c.vertices + np.array([0.35, 0.1]), c.lift + 5.0, c.closed)
        for c in base.components
    ]
    d = SliceDiagram.build(list(base.components) + shifted, tolerance=1e-9)
    t = morse_table(d)
    inter = [r for r in t.crossing_rows() if r.symbolic]
    assert inter, "expected symbolic rows from overlapping components"
    assert t.has_symbolic
    for r in inter:
        assert r.value is None
        assert r.index_offset is None
        assert r.location in ("P+", "P-")


def test_non_generic_zero_value_flagged():
    # Equal areas at the center crossing force a zero critical value.
    d = realize("C(-,+,-;2,2,1)")
    t = morse_table(d)
    assert t.non_generic


def test_morse_json_shape():
    data = morse_table(realize("8+(1)")).to_json_dict()
    assert data["topology"] == {"components": 1, "h0": 1, "h1": 1}
    offsets = {row["offset"] for row in data["rows"]}
    assert offsets == {0, 3, 1}
