from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multhull.census import enumerate_semigroups
from multhull.degeneracy import (
    canonical_compose,
    degeneracy_report,
    injectivity_checks,
    is_nondegenerate_map,
    is_translation_nondegenerate,
    left_degeneracy_witness,
    recheck_witness,
    right_degeneracy_witness,
)
from multhull.extension import semigroup_homs_into
from multhull.hull import hull
from multhull.semigroup import as_monoid, cyclic_group, empty, left_zero, null_semigroup

ORDER3 = list(enumerate_semigroups(3))
REDUCED = [S for n in (1, 2, 3) for S in enumerate_semigroups(n, reduce_iso=True)]


def test_left_zero_report():
    d = degeneracy_report(left_zero(2))
    assert d.globally_idempotent and d.left_nondeg and not d.right_nondeg
    assert d.witnesses["right_nondeg"] == (0, 1)
    assert recheck_witness(left_zero(2), "right_nondeg", (0, 1))


def test_null_semigroup_not_globally_idempotent():
    d = degeneracy_report(null_semigroup(2))
    assert not d.globally_idempotent
    assert d.witnesses["globally_idempotent"] == (1,)


def test_empty_semigroup_is_vacuously_fine():
    d = degeneracy_report(empty())
    assert d.globally_idempotent and d.nondegenerate


def test_monoids_pass_everything(census3):
    for S in census3:
        if as_monoid(S) is not None:
            assert degeneracy_report(S).in_sem_nd


@given(st.sampled_from(ORDER3))
def test_witnesses_are_lexicographically_first_and_valid(S):
    d = degeneracy_report(S)
    n, t = S.n, S.table
    cols_equal = [(y, z) for y in range(n) for z in range(y + 1, n)
                  if all(t[x][y] == t[x][z] for x in range(n))]
    rows_equal = [(y, z) for y in range(n) for z in range(y + 1, n)
                  if all(t[y][x] == t[z][x] for x in range(n))]
    assert right_degeneracy_witness(S) == (cols_equal[0] if cols_equal else None)
    assert left_degeneracy_witness(S) == (rows_equal[0] if rows_equal else None)
    for prop, w in d.witnesses.items():
        if w is not None:
            assert recheck_witness(S, prop, w)


def test_recheck_rejects_non_witnesses():
    S = cyclic_group(2)
    assert not recheck_witness(S, "right_nondeg", (0, 1))
    assert not recheck_witness(S, "left_nondeg", (0, 0))


def test_identity_nondegenerate_iff_globally_idempotent(census3):
    for S in census3:
        assert is_nondegenerate_map(list(range(S.n)), S).ok == degeneracy_report(S).globally_idempotent


def test_constant_map_into_null_semigroup_is_degenerate():
    rep = is_nondegenerate_map([1, 1], null_semigroup(2))
    assert not rep.ok and rep.left_missing == 1


def test_monoid_homs_are_nondegenerate():
    monoids = [as_monoid(S) for S in REDUCED if as_monoid(S) is not None]
    for M in monoids:
        for N in monoids:
            for f in semigroup_homs_into(M.sg, N.sg.array):
                if f[M.e] == N.e:
                    assert is_nondegenerate_map(f, N.sg).ok


def test_canonical_map_translation_nondegenerate_when_globally_idempotent(census3):
    for S in census3:
        if degeneracy_report(S).globally_idempotent:
            assert is_translation_nondegenerate(canonical_compose(list(range(S.n)), S), S.n).ok


def test_nondegenerate_iff_canonical_composite_translation_nondegenerate():
    for S in REDUCED:
        for T in REDUCED:
            for f in product(range(T.n), repeat=S.n):
                assert (is_nondegenerate_map(f, T).ok
                        == is_translation_nondegenerate(canonical_compose(f, T), T.n).ok)


def test_constant_identity_multiplier_is_always_translation_nondegenerate(census3):
    # id(t) = t reaches every element, whether or not T is a monoid
    for T in census3:
        ident = (tuple(range(T.n)), tuple(range(T.n)))
        assert is_translation_nondegenerate([ident], T.n).ok


def test_constant_zero_multiplier_is_translation_degenerate():
    S = null_semigroup(2)
    H = hull(S)
    zero = H.elements[H.canonical_indices()[0]].pair
    rep = is_translation_nondegenerate([zero, zero], 2)
    assert not rep.ok and rep.left_missing == 1


def test_composition_of_nondegenerate_homs():
    nd_homs = {}
    for S in REDUCED:
        for T in REDUCED:
            nd_homs[(S, T)] = [f for f in semigroup_homs_into(S, T.array) if is_nondegenerate_map(f, T).ok]
    for S in REDUCED:
        for T in REDUCED:
            for f in nd_homs[(S, T)][:3]:
                for U in REDUCED:
                    for g in nd_homs[(T, U)][:3]:
                        assert is_nondegenerate_map([g[v] for v in f], U).ok


def test_injectivity_pairing_on_examples():
    r = injectivity_checks(cyclic_group(2))
    assert r.left_map_injective and r.right_map_injective and r.consistent
    r = injectivity_checks(left_zero(2))
    # right-degenerate, and x -> R_x is the non-injective map; x -> L_x is injective
    assert not r.right_nondeg and not r.right_map_injective and r.left_map_injective
    assert r.consistent
    assert not r.crossed_pairing_holds


def test_injectivity_pairing_on_census_up_to_4(census3):
    for S in census3:
        assert injectivity_checks(S).consistent
    for i, S in enumerate(enumerate_semigroups(4)):
        if i % 7 == 0:
            assert injectivity_checks(S).consistent


@pytest.mark.parametrize("prop", ["bogus"])
def test_recheck_unknown_property(prop):
    with pytest.raises(KeyError):
        recheck_witness(cyclic_group(2), prop, (0, 1))
