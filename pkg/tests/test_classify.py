import numpy as np
import pytest

from slicelab.catalog import realize
from slicelab.classify import classify
from slicelab.diagram import PlanarPolyline, SliceDiagram, sum_diagrams, transform_diagram


def test_catalog_eights_round_trip():
    c = classify(realize("8+(2)"))
    assert c.family == "8+"
    assert c.areas[0] == pytest.approx(2.0)
    c = classify(realize("8-(3)"))
    assert c.family == "8-"


def test_catalog_caterpillar_round_trip():
    c = classify(realize("C(+,-,+;1,2,2)"))
    assert c.family == "C(+,-,+)"
    assert list(c.areas) == pytest.approx([1.0, 2.0, 2.0])
    c = classify(realize("C(-,+,-;3,1,2)"))
    assert c.family == "C(-,+,-)"


def test_classification_survives_area_preserving_maps():
    d = realize("C(+,-,+;1,2,2)")
    m = np.array([[1.0, 0.4], [0.0, 1.0]]) @ np.array([[1.0, 0.0], [-0.3, 1.0]])
    mapped = transform_diagram(d, m, (3.0, -1.0))
    c = classify(mapped)
    assert c.family == "C(+,-,+)"
    assert list(c.areas) == pytest.approx([1.0, 2.0, 2.0], rel=1e-6)


def test_sum_classification_orders_by_x():
    d = sum_diagrams(realize("8-(1)"), realize("8+(2)"))
    c = classify(d)
    assert c.family == "8- + 8+"


def test_nest_classification():
    c = classify(realize("nest(8-(1),8+(20))"))
    assert c.family == "nest(8-,8+)"


def test_unequal_lobes_unclassified():
    # A one-crossing curve whose lobes differ by more than 2% stays honest.
    from slicelab.catalog import _chain_diagram

    d = _chain_diagram([1], [1.0, 1.2])
    assert classify(d).family == "unclassified"


def test_invalid_diagram_unclassified():
    t = np.linspace(0, 2 * np.pi, 48, endpoint=False)
    circle = PlanarPolyline(
        np.column_stack([np.cos(t), np.sin(t)]), lift=np.zeros(48)
    )
    d = SliceDiagram.build([circle], tolerance=1e-9)
    assert classify(d).family == "unclassified"


def test_merge_classification_is_not_forced():
    # The merged shape is outside the classifier's catalog patterns for now;
    # it must fall through to unclassified rather than mislabel.
    d = realize("merge(1/4,1/2,6)")
    assert classify(d).family == "unclassified"
