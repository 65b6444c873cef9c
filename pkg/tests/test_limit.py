from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from tilecoh import intlin as il
from tilecoh.abgrp import FgAbGroup, GroupHom
from tilecoh.limit import GLUED, SYMBOLIC, LimitGroup, endomorphism, limit_chain, limit_of


def test_expanding_scalar():
    assert limit_of(endomorphism([[25]])) == LimitGroup([(25, 1)])
    assert limit_of(endomorphism([[25]])) == LimitGroup([(5, 1)])


def test_torsion_identity():
    assert limit_of(endomorphism([[1]], [2])) == LimitGroup([], 0, [2])


def test_nilpotent_limit_vanishes():
    assert limit_of(endomorphism([[0, 1], [0, 0]])) == LimitGroup()


def test_identity_three():
    assert limit_of(endomorphism(il.identity(3))) == LimitGroup([], 3)


def test_glued_expanding_part():
    g = limit_of(endomorphism([[25, -2], [0, 3]]))
    assert g.status == GLUED and g.glue == 11
    assert g != LimitGroup([(25, 1), (3, 1)])
    assert "glued at index 11" in g.describe()


def test_index_absorbed_by_localization():
    g = limit_of(endomorphism([[25, -4], [0, 5]]))
    assert g.is_exact and g == LimitGroup([(5, 2)])


def test_gluing_absorbed_when_its_summands_localize():
    # eigenvectors (1,0,0), (1,3,0), (0,0,1) for 6, 3, 2: index 3, which
    # divides both glued eigenvalues
    g = limit_of(endomorphism([[6, -1, 0], [0, 3, 0], [0, 0, 2]]))
    assert g.is_exact and g == LimitGroup([(6, 1), (3, 1), (2, 1)])


def test_partial_gluing_is_symbolic():
    # 5 and 2 glued at index 3, while 3 divides the separate eigenvalue 6
    g = limit_of(endomorphism([[5, -1, 0], [0, 2, 0], [0, 0, 6]]))
    assert g.status == SYMBOLIC


@st.composite
def groups(draw):
    n = draw(st.integers(1, 4))
    orders = sorted(draw(st.lists(st.sampled_from([0, 0, 2, 3, 4]), min_size=n, max_size=n)),
                    key=lambda d: (d != 0, d))
    return orders


@settings(max_examples=60, deadline=None)
@given(groups())
def test_identity_limit_is_group(orders):
    n = len(orders)
    G = endomorphism(il.identity(n), orders).source
    assert limit_of(GroupHom(G, G, il.identity(n))) == LimitGroup.of_group(G)


UNIMOD = st.sampled_from([
    [[1, 2, 0], [0, 1, 0], [3, 7, 1]],
    [[0, 1, 0], [1, 0, 0], [0, 0, -1]],
    [[1, 0, 0], [-4, 1, 0], [2, 5, 1]],
    [[2, 1, 0], [1, 1, 0], [0, 0, 1]],
])
DIAG = st.lists(st.sampled_from([1, -1, 3, 25, 2, 5]), min_size=3, max_size=3)


@settings(max_examples=80, deadline=None)
@given(UNIMOD, DIAG, st.integers(-3, 3))
def test_conjugation_invariance(P, d, off):
    if d[0] == d[1]:
        off = 0  # keep B semisimple; Jordan blocks give basis-dependent symbolic limits
    B = [[d[0], off, 0], [0, d[1], 0], [0, 0, d[2]]]
    C = il.matmul(il.matmul(P, B), il.inverse_unimodular(P))
    a, b = limit_of(endomorphism(B)), limit_of(endomorphism(C))
    # symbolic limits are refusals stored in their own basis; compare the rest
    assert a.status == b.status
    if a.is_classified:
        assert a == b


def test_conjugation_invariance_of_glued_limit():
    P = [[1, 2, 0], [0, 1, 0], [3, 7, 1]]
    B = [[25, -2, 0], [0, 3, 0], [0, 0, 1]]
    C = il.matmul(il.matmul(P, B), il.inverse_unimodular(P))
    assert limit_of(endomorphism(C)) == limit_of(endomorphism(B))
    assert limit_of(endomorphism(C)).glue == 11


def test_json_roundtrip():
    for g in [LimitGroup([(25, 1), (3, 2)], 5, [2]), limit_of(endomorphism([[25, -2], [0, 3]])),
              limit_of(endomorphism([[5, -1, 0], [0, 2, 0], [0, 0, 6]]))]:
        assert LimitGroup.from_json(g.to_json()) == g


def test_chain_reports_stages():
    ch = limit_chain(endomorphism([[25, 0, 0], [0, 3, 0], [0, 0, 0]]))
    d = ch.to_json()
    assert d["kernel_power"] == 1
    assert ch.reduction.group.free_rank == 2
    assert ch.limit == LimitGroup([(25, 1), (3, 1)])


def test_bad_localized_rejected():
    with pytest.raises(ValueError):
        LimitGroup([(1, 1)])


def test_direct_sum_and_torsion_free_part():
    a = LimitGroup([(3, 1)], 1, [2])
    b = LimitGroup([(25, 1)], 0, [2, 2])
    s = a.direct_sum(b)
    assert s == LimitGroup([(25, 1), (3, 1)], 1, [2, 2, 2])
    assert s.torsion_free_part() == LimitGroup([(25, 1), (3, 1)], 1)
