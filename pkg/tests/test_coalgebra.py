from __future__ import annotations

import numpy as np
import pytest

from multhull.coalgebra import (
    comultiplier_monoid,
    comultiplier_space,
    comultiplier_space_via_dual,
    dual_algebra,
    dual_coalgebra,
    dual_convolution,
    duality_report,
    group_like,
    inner_comultiplier,
    inner_comultiplier_checks,
    inner_hom_law_holds,
    read_coalgebra,
    validate_coalgebra,
    coalgebra_from_dict,
)
from multhull.errors import AlgParseError, NotCoassociative
from multhull.linear import LinearMultiplierPair, convolution_semigroup, read_algebra
from multhull.semigroup import chain, null_semigroup

COALGS = ["gf2-zero-1-dual", "gf2-zero-2-dual", "gf3-zero-1-dual", "gf2-field-dual", "gf3-field-dual",
          "gf2-nilpotent-2-dual", "gf2-diag-2-dual", "gf2-uppertri-3-dual",
          "gf2-grouplike-1", "gf2-grouplike-2", "gf3-grouplike-1"]


def _c(data_dir, name):
    return read_coalgebra(data_dir / "fleet" / f"{name}.coalg.alg")


def test_group_like_d1():
    C = group_like(2, 1)
    pairs = comultiplier_space(C).pairs
    assert sorted(pairs) == [LinearMultiplierPair.of([[0]], [[0]]), LinearMultiplierPair.of([[1]], [[1]])]
    assert len(comultiplier_monoid(C)) == 2
    assert inner_comultiplier(C, [1]) == LinearMultiplierPair.of([[1]], [[1]])
    assert dual_convolution(C) == chain(2)


def test_zero_coalgebra_d1():
    C = validate_coalgebra(2, 1, [[[0]]])
    assert len(comultiplier_monoid(C)) == 4
    assert dual_convolution(C) == null_semigroup(2)
    assert inner_comultiplier(C, [0]) == LinearMultiplierPair.of([[0]], [[0]])


def test_dual_of_nilpotent_is_valid(data_dir):
    A = read_algebra(data_dir / "fleet" / "gf2-nilpotent-2.alg")
    C = dual_coalgebra(A)
    assert dual_algebra(C) == A
    assert C == _c(data_dir, "gf2-nilpotent-2-dual")


def test_not_coassociative():
    # delta(e0) = e1 (x) e1, delta(e1) = e0 (x) e0
    t = np.zeros((2, 2, 2), int)
    t[0, 1, 1] = 1
    t[1, 0, 0] = 1
    with pytest.raises(NotCoassociative):
        validate_coalgebra(2, 2, t)


@pytest.mark.parametrize("name", COALGS)
def test_duality_and_inner(data_dir, name):
    C = _c(data_dir, name)
    assert sorted(comultiplier_space(C).pairs) == comultiplier_space_via_dual(C)
    rep = duality_report(C)
    assert rep.ok
    assert inner_hom_law_holds(C)
    inj = inner_comultiplier_checks(C)
    assert inj.left_identity and inj.right_identity and inj.implication_holds
    assert dual_convolution(C) == convolution_semigroup(dual_algebra(C))


def test_plain_transpose_is_not_anti_on_noncommutative_monoid(data_dir):
    # the comultiplier monoid of the 2-dim zero coalgebra is noncommutative; plain transpose
    # preserves its products, so it cannot also reverse them
    rep = duality_report(_c(data_dir, "gf2-zero-2-dual"))
    assert rep.transpose_is_isomorphism and not rep.plain_transpose_is_anti
    assert rep.size == 256


def test_file_requires_consistent_mul():
    C = group_like(2, 2)
    d = C.to_dict()
    assert coalgebra_from_dict(d) == C
    d["mul"][0][0] = [0, 1]
    with pytest.raises(AlgParseError):
        coalgebra_from_dict(d)
