import pytest

from tilecoh.exact import Motion, QSqrt5
from tilecoh.tiling import (
    SubstitutionSystem, TilingError, derive_kr_system, pinwheel_triangle_system, power_system,
    render_svg, single, square_system, substitute,
)


@pytest.fixture(scope="module")
def tri():
    return pinwheel_triangle_system()


@pytest.mark.parametrize("level", range(1, 6))
def test_area_scales_by_inflation_squared(tri, level):
    lam2 = tri.inflation * tri.inflation
    for pid in tri.order:
        a = single(tri, pid).area()
        assert substitute(single(tri, pid), level).area() == a * lam2 ** level


def test_triangle_counts(tri):
    assert len(substitute(single(tri, "TL"), 3).tiles) == 125
    assert tri.inflation * tri.inflation == QSqrt5(5)


def test_kr_system_is_primitive():
    kr = derive_kr_system()
    assert kr.order == ["K", "L", "R"]
    assert kr.inflation == QSqrt5(5)
    assert kr.is_primitive()
    lam2 = kr.inflation * kr.inflation
    for pid in kr.order:
        assert substitute(single(kr, pid), 2).area() == single(kr, pid).area() * lam2 ** 2


def test_substituted_patch_has_no_overlaps(tri):
    substitute(single(tri, "TR"), 2).validate()


def test_power_system(tri):
    p2 = power_system(tri, 2)
    assert p2.inflation == QSqrt5(5)
    assert len(p2.rules["TL"]) == 25
    assert power_system(tri, 1) is tri
    with pytest.raises(TilingError):
        power_system(tri, 0)


def test_json_roundtrip(tri):
    again = SubstitutionSystem.from_json(tri.to_json())
    assert again.to_json() == tri.to_json()


def test_render_svg(tri):
    svg = render_svg(substitute(single(tri, "TL", Motion.identity()), 3))
    assert svg.startswith("<svg") and svg.count("<polygon") == 125


def test_square_system():
    sq = square_system()
    assert substitute(single(sq, "S"), 3).area() == QSqrt5(64)
