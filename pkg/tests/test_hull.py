from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multhull.census import enumerate_semigroups
from multhull.errors import HullClosureViolation, IncompatibleCarrier
from multhull.hull import (
    hull,
    hull_from_dict,
    is_left_translation,
    is_linked,
    is_multiplier,
    is_right_translation,
    left_translations,
    multipliers,
    naive_hull,
    naive_multipliers,
    push_forward,
    right_translations,
    star,
    swap,
)
from multhull.semigroup import (
    chain,
    cyclic_group,
    empty,
    left_zero,
    null_semigroup,
    opposite,
    relabel,
    trivial,
    v_semilattice,
)

ORDER3 = list(enumerate_semigroups(3))


@pytest.mark.parametrize("S,total,inner", [
    (left_zero(2), 4, 2),
    (null_semigroup(2), 4, 1),
    (v_semilattice(), 4, 3),
    (cyclic_group(2), 2, 2),
    (trivial(), 1, 1),
    (empty(), 1, 0),
])
def test_hull_sizes(S, total, inner):
    H = hull(S)
    assert (len(H), H.inner_count, H.outer_count) == (total, inner, total - inner)


def test_left_zero_outer_multipliers():
    # oracle: brute force over all 2^2 x 2^2 pairs
    H = hull(left_zero(2))
    assert [m.pair for m in H.elements] == naive_multipliers(left_zero(2))
    outer = [m.pair for m in H.elements if not m.is_inner]
    assert outer == [((0, 1), (0, 1)), ((1, 0), (0, 1))]


def test_v_semilattice_all_diagonal():
    H = hull(v_semilattice())
    assert all(m.is_diagonal for m in H.elements)
    outer = [m for m in H.elements if not m.is_inner]
    assert [m.pair for m in outer] == [((0, 1, 2), (0, 1, 2))]


def test_null4_hull_is_large_and_verified():
    # every L with L(0) = 0 paired with every such R: 4^3 x 4^3 = 4096
    H = hull(null_semigroup(4))
    assert len(H) == 4096
    H.verify()


def test_identity_element_is_id_id():
    for S in ORDER3[:20]:
        H = hull(S)
        assert H.elements[H.identity_index].pair == (tuple(range(S.n)), tuple(range(S.n)))


def test_backtracking_matches_brute_force_on_order3(census3):
    for S in census3:
        elems, table = naive_hull(S)
        H = hull(S)
        assert [m.pair for m in H.elements] == elems
        assert H.star_table.tolist() == table


def test_translations_match_predicates():
    S = v_semilattice()
    from itertools import product
    maps = list(product(range(3), repeat=3))
    assert left_translations(S) == [m for m in maps if is_left_translation(S, m)]
    assert right_translations(S) == [m for m in maps if is_right_translation(S, m)]


@given(st.sampled_from(ORDER3))
def test_every_element_is_linked_pair(S):
    for m in multipliers(S):
        assert is_multiplier(S, m.L, m.R) and is_linked(S, m.L, m.R)


@given(st.sampled_from(ORDER3))
def test_canonical_map_and_translation_identities(S):
    H = hull(S)
    can = H.canonical_indices()
    tab = H.star_table
    for x in range(S.n):
        for y in range(S.n):
            assert tab[can[x], can[y]] == can[S.mul(x, y)]
    for h, m in enumerate(H.elements):
        for s in range(S.n):
            assert tab[h, can[s]] == can[m.L[s]]
            assert tab[can[s], h] == can[m.R[s]]


@given(st.sampled_from(ORDER3))
def test_opposite_hull_is_swapped(S):
    H, Ho = hull(S), hull(opposite(S))
    assert sorted(swap(m) for m in H.elements) == [m.pair for m in Ho.elements]


@given(st.sampled_from(ORDER3), st.permutations([0, 1, 2]))
def test_push_forward_along_isomorphism(S, perm):
    T = relabel(S, perm)
    HT = hull(T)
    moved = sorted(push_forward(S, m, perm) for m in hull(S).elements)
    assert moved == [m.pair for m in HT.elements]


def test_push_forward_rejects_bad_carrier():
    S = cyclic_group(2)
    with pytest.raises(IncompatibleCarrier):
        push_forward(S, ((0, 1, 2), (0, 1, 2)))
    with pytest.raises(IncompatibleCarrier):
        push_forward(S, ((0, 1), (0, 1)), [0, 0])
    assert push_forward(S, ((0, 1), (1, 0))) == ((0, 1), (1, 0))


def test_star_composes_in_stated_order():
    a = ((1, 1, 2), (0, 0, 0))
    b = ((2, 0, 1), (1, 2, 0))
    L, R = star(a, b)
    assert L == tuple(a[0][b[0][k]] for k in range(3))
    assert R == tuple(b[1][a[1][k]] for k in range(3))


def test_serialization_round_trip():
    H = hull(left_zero(2))
    d = H.to_dict()
    assert d["counts"] == {"total": 4, "inner": 2, "outer": 2}
    assert hull_from_dict(d).to_dict() == d
    d["star_table"][0][0] = 3
    with pytest.raises(HullClosureViolation):
        hull_from_dict(d)


def test_chain_is_monoid_hull_iso():
    S = chain(3)
    H = hull(S)
    assert len(H) == 3 and H.outer_count == 0
