from hypothesis import given
from hypothesis import strategies as st
import pytest

from tilecoh import intlin as il
from tilecoh.abgrp import FgAbGroup, GroupError, GroupHom, subquotient


def test_presented_group():
    G = FgAbGroup.presented(3, [[2, 0], [0, 6], [0, 0]])
    assert G.invariants() == (1, (2, 6))
    assert G.describe() == "Z + Z_2 + Z_6"


def test_subquotient_circle():
    # cochains of a circle with one vertex and one edge: d = 0
    H0 = subquotient(1, [[1]], [[0]])
    assert H0.describe() == "Z"


def test_trivial():
    assert FgAbGroup.presented(2, il.identity(2)).is_trivial()


@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3))
def test_coords_lift_roundtrip(v):
    G = FgAbGroup.presented(3, [[4, 0], [0, 0], [0, 3]])
    c = G.coords(v)
    assert G.coords(G.lift(c)) == c
    assert G.coords([a + b for a, b in zip(v, [4, 0, 0])]) == c


def test_hom_rejects_non_map():
    Z2 = FgAbGroup.presented(1, [[2]])
    Z = FgAbGroup.presented(1, [[0]])
    with pytest.raises(GroupError):
        GroupHom(Z2, Z, [[1]])


def test_hom_on_generators():
    G = FgAbGroup.presented(2, [[0], [2]])
    h = GroupHom(G, G, [[3, 0], [0, 1]])
    assert h.on_generators() == [[3, 0], [0, 1]]
