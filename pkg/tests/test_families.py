import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicelab.families import BumpTerm, GeneratingFamily, family_from_json_dict

ZERO = GeneratingFamily(())
SINGLE = GeneratingFamily((BumpTerm(1.0, 0.0, 0.0, 1.0, 1.0),))


def test_zero_family_everywhere_zero():
    xs = np.linspace(-3, 3, 17)
    d1, d2 = ZERO.partials(xs, xs)
    assert np.all(d1 == 0.0)
    assert np.all(d2 == 0.0)


def test_outside_support_is_zero():
    d1, d2 = SINGLE.partials(np.array([2.0, -1.5]), np.array([0.0, 0.2]))
    assert np.all(d1 == 0.0)
    assert np.all(d2 == 0.0)
    assert SINGLE.value(0.0, 3.0) == 0.0


def test_partial_x1_is_odd_around_center():
    d1a, _ = SINGLE.partials(0.37, 0.11)
    d1b, _ = SINGLE.partials(-0.37, 0.11)
    assert float(d1a) == pytest.approx(-float(d1b), rel=1e-12)


coords = st.floats(min_value=-1.5, max_value=1.5)


@given(coords, coords)
@settings(max_examples=120)
def test_partials_match_finite_differences(x, y):
    eps = 1e-6
    d1, d2 = SINGLE.partials(x, y)
    fd1 = (SINGLE.value(x + eps, y) - SINGLE.value(x - eps, y)) / (2 * eps)
    fd2 = (SINGLE.value(x, y + eps) - SINGLE.value(x, y - eps)) / (2 * eps)
    assert float(d1) == pytest.approx(float(fd1), rel=1e-6, abs=1e-8)
    assert float(d2) == pytest.approx(float(fd2), rel=1e-6, abs=1e-8)


@given(coords, coords)
@settings(max_examples=60)
def test_second_partials_match_finite_differences(x, y):
    eps = 1e-5
    f11, f12, f22 = SINGLE.second_partials(x, y)
    fd11 = (
        SINGLE.value(x + eps, y) - 2 * SINGLE.value(x, y) + SINGLE.value(x - eps, y)
    ) / eps**2
    fd12 = (
        SINGLE.value(x + eps, y + eps)
        - SINGLE.value(x + eps, y - eps)
        - SINGLE.value(x - eps, y + eps)
        + SINGLE.value(x - eps, y - eps)
    ) / (4 * eps**2)
    assert float(f11) == pytest.approx(float(fd11), rel=1e-4, abs=1e-6)
    assert float(f12) == pytest.approx(float(fd12), rel=1e-4, abs=1e-6)


def test_third_partials_match_finite_differences():
    x, y = 0.31, 0.44
    h112, h122, h222 = SINGLE.third_partials_of_height(x, y)
    eps = 1e-6
    fd112 = (
        SINGLE.second_partials(x + eps, y)[1] - SINGLE.second_partials(x - eps, y)[1]
    ) / (2 * eps)
    fd222 = (
        SINGLE.second_partials(x, y + eps)[2] - SINGLE.second_partials(x, y - eps)[2]
    ) / (2 * eps)
    assert float(h112) == pytest.approx(float(fd112), rel=1e-5)
    assert float(h222) == pytest.approx(float(fd222), rel=1e-5)


def test_json_round_trip():
    fam = GeneratingFamily(
        (BumpTerm(1.0, -0.3, 0.1, 0.9, 1.1), BumpTerm(-0.4, 0.2, 0.0, 0.5, 0.4))
    )
    again = family_from_json_dict(fam.to_json_dict())
    assert again == fam
    assert again.digest() == fam.digest()


def test_width_validation():
    with pytest.raises(ValueError):
        BumpTerm(1.0, 0.0, 0.0, -1.0, 1.0)
