from fractions import Fraction

import pytest

from slicelab.catalog import (
    Cat,
    CatalogConstraintError,
    CatalogParseError,
    EightMinus,
    EightPlus,
    Nest,
    Sum,
    parse_catalog,
    realize,
)


def test_parse_eight_plus():
    spec = parse_catalog("8+(1)")
    assert spec == EightPlus(Fraction(1))


def test_parse_cat():
    spec = parse_catalog("C(-,+,-;3,1,2)")
    assert spec == Cat((-1, 1, -1), (Fraction(3), Fraction(1), Fraction(2)))


def test_parse_cat_constraint_violation():
    with pytest.raises(CatalogConstraintError):
        parse_catalog("C(+,-,+;1,3,1)")


def test_parse_sum_and_nest():
    spec = parse_catalog("8+(1) + 8+(2)")
    assert isinstance(spec, Sum)
    spec = parse_catalog("nest(8-(1),8+(20))")
    assert isinstance(spec, Nest)


def test_parse_decimal_and_fraction_areas():
    assert parse_catalog("8+(0.5)") == EightPlus(Fraction(1, 2))
    assert parse_catalog("8+(3/4)") == EightPlus(Fraction(3, 4))


def test_parse_reports_position():
    with pytest.raises(CatalogParseError) as exc:
        parse_catalog("8+(1) + bogus")
    assert exc.value.position == 8


def test_parse_rejects_nonpositive_area():
    with pytest.raises(CatalogParseError):
        parse_catalog("8+(0)")


@pytest.mark.parametrize(
    "expr,crossings,areas",
    [
        ("8+(1)", 1, [1, 1]),
        ("8-(2)", 1, [2, 2]),
        ("C(-,+,-;3,1,2)", 3, [1, 2, 3, 4]),
        ("C(+,-,+;1,2,2)", 3, [1, 1, 2, 2]),
    ],
)
def test_realize_crossings_and_areas(expr, crossings, areas):
    d = realize(expr)
    assert len(d.crossings) == crossings
    got = sorted(float(f.area) for f in d.arrangement.faces if f.bounded)
    assert got == pytest.approx(areas, rel=1e-9)
    # Areas are pinned exactly after realisation.
    assert all(
        isinstance(f.area, Fraction) for f in d.arrangement.faces if f.bounded
    )


def test_realize_eight_plus_positive_crossing():
    assert realize("8+(1)").crossings[0].sign == 1
    assert realize("8-(1)").crossings[0].sign == -1


def test_realize_cat_signs():
    d = realize("C(-,+,-;3,1,2)")
    assert [c.sign for c in d.crossings] == [-1, 1, -1]
    d = realize("C(-,-,-;3,1,2)")
    assert [c.sign for c in d.crossings] == [-1, -1, -1]


def test_realize_component_signed_area_is_zero():
    for expr in ["8+(1)", "8-(3)", "C(-,+,-;3,1,2)"]:
        d = realize(expr)
        for comp in d.components:
            assert abs(comp.signed_area()) < 1e-9


def test_realize_sum_no_inter_crossings():
    d = realize("8+(1) + 8+(2)")
    assert len(d.components) == 2
    assert len(d.crossings) == 2
    assert all(c.is_self for c in d.crossings)


def test_realize_nest_places_inner_inside():
    d = realize("nest(8-(1),8+(20))")
    assert len(d.components) == 2
    assert len(d.crossings) == 2
    # One face of the outer curve hosts the inner cluster.
    hosting = [f for f in d.arrangement.faces if f.contains_clusters]
    assert len(hosting) == 1
    assert float(hosting[0].true_area) == pytest.approx(20.0 - 2.0, rel=1e-6)


def test_realize_nest_unplaceable_raises():
    with pytest.raises(CatalogConstraintError):
        realize("nest(8-(2),8+(1))")


def test_random_catalog_diagrams_are_valid(realize_random):
    for _ in range(12):
        d = realize_random()
        assert d.is_valid()


def test_realize_merge_combinatorics():
    d = realize("merge(1/4,1/2,6)")
    assert len(d.components) == 1
    assert len(d.crossings) == 3
    assert sorted(c.sign for c in d.crossings) == [-1, 1, 1]
    areas = sorted(float(f.area) for f in d.arrangement.faces if f.bounded)
    assert areas == pytest.approx([0.25, 0.5, 5.5, 6.0])
    assert d.is_valid()
    assert all(
        isinstance(f.area, Fraction) for f in d.arrangement.faces if f.bounded
    )


def test_realize_merge_balance_constraint():
    from slicelab.merge_shape import MergeConstructionError

    with pytest.raises((CatalogConstraintError, MergeConstructionError)):
        realize("merge(2,1,3)")  # hosting region 3 - 4 < 0
