import pytest

from tilecoh.cone import (
    SingularityError, assemble_hull, count_cone_singularities, is_symmetric_star,
    orbit_periodicity,
)
from tilecoh.exact import Motion
from tilecoh.limit import SYMBOLIC, LimitGroup

Z = LimitGroup([], 1)
H2 = LimitGroup([(25, 1), (3, 2)], 5, [2])


def test_hull_from_exact_limits():
    h = assemble_hull(Z, Z, H2, 6)
    assert h.H0 == Z
    assert h.H1 == LimitGroup([], 2)
    assert h.H2 == LimitGroup([(25, 1), (3, 2)], 6, [2] * 5)
    assert h.H3 == H2
    assert h.E11 == LimitGroup([], 1, [2] * 5)
    assert h.E20 == LimitGroup([(25, 1), (3, 2)], 5)


def test_hull_needs_a_singularity():
    with pytest.raises(SingularityError):
        assemble_hull(Z, Z, H2, 0)


@pytest.mark.parametrize("torsion", [[], [2, 2], [3]])
def test_hull_outside_supported_torsion(torsion):
    with pytest.raises(SingularityError):
        assemble_hull(Z, Z, LimitGroup([(25, 1)], 5, torsion), 6)


def test_hull_refuses_symbolic_limit():
    sym = LimitGroup(status=SYMBOLIC, matrix=[[2]], orders=[0])
    with pytest.raises(SingularityError):
        assemble_hull(Z, Z, sym, 6)


def test_hull_json(kr):
    d = kr.hull.to_json()
    assert d["singularities"] == 6
    assert LimitGroup.from_json(d["H3"]) == kr.hull.H3


def _tile(cs, base, symmetric):
    return next(t for t in cs.tiles if t.base == base and bool(t.symmetries) == symmetric)


def test_symmetric_rectangle_center(kr):
    cs = kr.collared
    t = _tile(cs, "L", True)
    star = [(t.label, Motion.identity())]
    assert is_symmetric_star(cs, star, cs.shape(t.label).centroid())


def test_kite_center_not_symmetric(kr):
    cs = kr.collared
    t = _tile(cs, "K", False)
    star = [(t.label, Motion.identity())]
    assert not is_symmetric_star(cs, star, cs.shape(t.label).centroid())


def test_kr_centers(kr):
    cents = kr.centers
    assert len(cents) == 10
    assert count_cone_singularities(cents) == 6
    for c in cents:
        assert c.image is not None
        periodic, period = orbit_periodicity(c, kr.collared)
        assert periodic == c.periodic and period == c.period
        assert c.to_json()["periodic"] == c.periodic
