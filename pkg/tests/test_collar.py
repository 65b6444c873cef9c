from tilecoh.collar import census, forces_border, collared_substitution_matrix, is_primitive_matrix, projects_to_base
from tilecoh.tiling import square_system


def test_square_has_one_collared_tile():
    cs = census(square_system())
    assert len(cs) == 1
    assert collared_substitution_matrix(cs) == [[4]]


def test_kr_census(kr):
    cs = kr.collared
    assert len(cs) == 83
    assert cs.family_counts() == {"K": 31, "L": 26, "R": 26}
    assert projects_to_base(cs)


def test_kr_collared_substitution_is_primitive(kr):
    assert is_primitive_matrix(collared_substitution_matrix(kr.collared))


def test_children_are_collared_tiles(kr):
    cs = kr.collared
    for t in cs.tiles:
        assert t.children
        assert all(c in cs.by_label for c, _ in t.children)


def test_symmetric_tiles_are_rectangles(kr):
    cs = kr.collared
    assert all(t.base in ("L", "R") for t in cs.tiles if t.symmetries)


def test_collared_kr_forces_border_at_power_one(kr):
    assert forces_border(kr.collared, max_power=1) == (True, 1)
