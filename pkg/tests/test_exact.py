from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from tilecoh.exact import Motion, Point, Polygon, QSqrt5, Relation, polygon_predicates

small = st.fractions(min_value=-50, max_value=50, max_denominator=12)
scalars = st.builds(QSqrt5, small, small)
nonzero = scalars.filter(lambda x: not x.is_zero())

COS, SIN = QSqrt5(0, Fraction(2, 5)), QSqrt5(0, Fraction(1, 5))


def test_sqrt5_squared():
    r5 = QSqrt5(0, 1)
    assert r5 * r5 == QSqrt5(5)


def test_pythagorean_identity():
    assert COS * COS + SIN * SIN == QSqrt5(1)


def test_golden_ratio():
    phi = QSqrt5(1, 1, 2)
    assert (phi * phi - phi - 1).is_zero()


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QSqrt5(1) / QSqrt5(0)


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x


@given(nonzero)
def test_inverse(x):
    assert x * x.inverse() == QSqrt5(1)


@given(scalars)
def test_sign_matches_float(x):
    v = float(x)
    if abs(v) > 1e-6:
        assert x.sign() == (1 if v > 0 else -1)


@given(scalars)
def test_parse_roundtrip(x):
    assert QSqrt5.parse(str(x)) == x


def _motions():
    rots = st.sampled_from([(1, 0), (0, 1), (-1, 0), (0, -1), (COS, SIN), (COS, -SIN),
                            (-COS, SIN), (SIN, COS)])
    return st.builds(lambda r, x, y: Motion(r[0], r[1], x, y), rots, scalars, scalars)


@settings(max_examples=60)
@given(_motions(), _motions(), _motions())
def test_motion_associative(a, b, c):
    assert a.compose(b).compose(c) == a.compose(b.compose(c))


@settings(max_examples=60)
@given(_motions(), scalars, scalars)
def test_motion_orthogonal_and_inverse(m, x, y):
    (a, b), (c, d) = m.linear
    assert a * a + c * c == QSqrt5(1) and b * b + d * d == QSqrt5(1) and a * b + c * d == 0
    p = Point(x, y)
    assert m.inverse()(m(p)) == p
    assert m.compose(m.inverse()) == Motion.identity()


def test_rotation_by_arctan_half():
    r = Motion.rotation(COS, SIN)
    back = Motion.rotation(COS * COS - SIN * SIN, -(COS * SIN + SIN * COS))
    assert r.compose(r).compose(back) == Motion.identity()
    assert r.linear == ((COS, -SIN), (SIN, COS))


def test_reflection_rejected():
    with pytest.raises(ValueError):
        Motion(QSqrt5(1), QSqrt5(1))


def _square(dx=0):
    return Polygon([Point(dx, 0), Point(dx + 1, 0), Point(dx + 1, 1), Point(dx, 1)])


def test_polygon_relations():
    assert polygon_predicates(_square(), _square(1))[0] == Relation.FULL_EDGE
    assert polygon_predicates(_square(), _square(2))[0] == Relation.DISJOINT
    assert polygon_predicates(_square(), _square())[0] == Relation.OVERLAP
    assert polygon_predicates(_square(), Polygon([Point(1, 1), Point(2, 1), Point(2, 2)]))[0] \
        == Relation.CONTACT


def test_degenerate_polygon_rejected():
    with pytest.raises(ValueError):
        Polygon([Point(0, 0), Point(1, 0), Point(2, 0)])


def test_contains():
    sq = _square()
    assert sq.contains(Point(Fraction(1, 2), Fraction(1, 2))) == 1
    assert sq.contains(Point(1, Fraction(1, 2))) == 0
    assert sq.contains(Point(2, 2)) == -1
