import pytest

from tilecoh import intlin as il
from tilecoh.apx import (
    ComplexError, build_complex, from_whole_tile_coordinates, two_face_torsion,
    whole_tile_coordinates,
)
from tilecoh.limit import limit_of


def _invariants(co):
    return [(g.free_rank, list(g.torsion)) for g in co.groups()]


def test_square_gives_torus(square):
    assert square.complex.counts == (1, 2, 1)
    assert _invariants(square.cohomology) == [(1, []), (2, []), (1, [])]
    # doubling the torus multiplies degree k by 2^k
    assert square.induced.pullbacks() == ([[1]], [[2, 0], [0, 2]], [[4]])
    assert square.induced_report()["A2"] == [[4]]


def test_kr_complex(kr):
    cw = kr.complex
    assert cw.counts == (73, 138, 83)
    assert il.is_zero(il.matmul(cw.delta1, cw.delta0, cols=73))
    assert cw.euler_characteristic() == 73 - 138 + 83


def test_kr_cohomology(kr):
    assert _invariants(kr.cohomology) == [(1, []), (1, []), (18, [2])]


def test_fold_without_subdivision_raises(kr):
    with pytest.raises(ComplexError):
        build_complex(kr.collared, kr.pairs, subdivide_folds=False)


def test_two_face_class_has_order_two(kr):
    cw, co = kr.complex, kr.cohomology
    pairs = two_face_torsion(cw, co)
    assert pairs
    a, b = (cw.faces.index(x) for x in pairs[0])
    w = [0] * len(cw.faces)
    w[a], w[b] = 1, -2
    v = from_whole_tile_coordinates(cw, w)
    H = co.H2
    c = H.coords(v)
    assert any(c) and not any(H.coords([2 * x for x in v]))
    assert whole_tile_coordinates(cw, v) == w


def test_induced_degree_zero_and_one_are_identity(kr):
    r = kr.induced_report()
    assert r["A0_identity"] and r["A1_identity"]
    roots = dict(r["integer_roots"])
    assert roots[25] == 1 and roots[3] >= 2


def test_triangle_complex(triangle):
    assert len(triangle.collared) == 108
    assert triangle.complex.counts == (42, 137, 108)
    assert _invariants(triangle.cohomology) == [(1, []), (1, []), (13, [2])]


def test_triangle_route_agrees_with_kite_rectangle(kr, triangle):
    # one kite-rectangle step is two triangle steps, so the degree-2 limits
    # of the two systems must agree, gluing included
    A2 = triangle.induced.A2
    two_steps = limit_of(A2.compose(A2))
    assert two_steps == kr.limit_groups()[2]
    assert two_steps.glue == 11
