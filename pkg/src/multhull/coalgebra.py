"""Coalgebras over GF(p) and their comultiplier monoids.

``delta[k][i][j]`` is the coefficient of ``e_i (x) e_j`` in ``delta(e_k)``.
Functionals are coordinate covectors ``f`` with ``f(e_i) = f[i]``. The same
strict identifications as in :mod:`multhull.linear` apply.

Comultipliers are pairs ``(L, R)`` with

    delta L = (L (x) id) delta,   delta R = (id (x) R) delta,
    (R (x) id) delta = (id (x) L) delta,

composed by ``(L', R') * (L, R) = (L L', R' R)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from . import gfp
from .degeneracy import degeneracy_report
from .errors import AlgebraError, AlgParseError, InternalVerificationFailed, NotCoassociative
from .linear import (
    DEFAULT_CONV_BOUND,
    DEFAULT_SPACE_BOUND,
    FpAlgebra,
    LinearMultiplierPair,
    MultiplierSpace,
    PairMonoid,
    _require,
    multiplier_space,
    parse_alg_json,
    solve_pair_space,
    validate_algebra,
)
from .semigroup import FiniteSemigroup


@dataclass(frozen=True)
class FpCoalgebra:
    p: int
    dim: int
    delta: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @cached_property
    def tensor(self) -> np.ndarray:
        return np.asarray(self.delta, dtype=np.int64).reshape(self.dim, self.dim, self.dim)

    @cached_property
    def covectors(self) -> np.ndarray:
        return gfp.all_vectors(self.p, self.dim)

    def convolve(self, G: np.ndarray, F: np.ndarray) -> np.ndarray:
        """``out[a, b] = G[a] . F[b]`` with ``(g . f)_k = sum delta[k][i][j] g_i f_j``."""
        return np.einsum("kij,ai,bj->abk", self.tensor, G, F) % self.p

    def to_dict(self) -> dict:
        # "mul" carries the dual algebra so the file also reads as an algebra
        mul = self.tensor.transpose(1, 2, 0).tolist()
        return {"p": self.p, "dim": self.dim, "mul": mul,
                "comul": [[list(r) for r in m] for m in self.delta]}


def validate_coalgebra(p: int, dim: int, delta) -> FpCoalgebra:
    gfp.check_prime(p)
    arr = np.asarray(delta, dtype=object)
    if dim and arr.shape != (dim, dim, dim):
        raise AlgebraError(f"comultiplication tensor has shape {arr.shape}, expected {(dim, dim, dim)}")
    arr = np.asarray(delta, dtype=np.int64).reshape(dim, dim, dim) if dim else np.zeros((0, 0, 0), np.int64)
    if ((arr < 0) | (arr >= p)).any():
        k, i, j = (int(v) for v in np.argwhere((arr < 0) | (arr >= p))[0])
        raise AlgebraError(f"coefficient delta[{k}][{i}][{j}] outside [0, {p})")
    lhs = np.einsum("kmz,mxy->kxyz", arr, arr) % p   # (delta (x) id) delta
    rhs = np.einsum("kxm,myz->kxyz", arr, arr) % p   # (id (x) delta) delta
    bad = np.nonzero((lhs != rhs).reshape(dim, -1).any(axis=1))[0]
    if len(bad):
        raise NotCoassociative(int(bad[0]))
    return FpCoalgebra(p, dim, tuple(tuple(tuple(int(v) for v in r) for r in m) for m in arr))


def dual_coalgebra(A: FpAlgebra) -> FpCoalgebra:
    """``delta[k][i][j] = c[i][j][k]``"""
    return validate_coalgebra(A.p, A.dim, A.tensor.transpose(2, 0, 1))


def dual_algebra(C: FpCoalgebra, opposite: bool = False) -> FpAlgebra:
    """The algebra of functionals: ``c[i][j][k] = delta[k][i][j]``.

    ``opposite=True`` gives the opposite product ``c[i][j][k] = delta[k][j][i]``.
    """
    t = C.tensor.transpose(2, 1, 0) if opposite else C.tensor.transpose(1, 2, 0)
    return validate_algebra(C.p, C.dim, t)


def group_like(p: int, d: int) -> FpCoalgebra:
    """``delta(e_i) = e_i (x) e_i``"""
    t = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        t[i, i, i] = 1
    return validate_coalgebra(p, d, t)


def comultiplier_equations(C: FpCoalgebra) -> np.ndarray:
    """Rows in the unknowns ``L[r][k]`` (index ``r d + k``) then ``R[r][k]``.

    One row per basis vector ``e_k``, output coefficient ``e_i (x) e_j`` and law.
    """
    d, p, t = C.dim, C.p, C.tensor
    rows = []
    for k in range(d):
        for i in range(d):
            for j in range(d):
                a = np.zeros(2 * d * d, dtype=np.int64)   # delta L = (L (x) id) delta
                b = np.zeros(2 * d * d, dtype=np.int64)   # delta R = (id (x) R) delta
                c = np.zeros(2 * d * d, dtype=np.int64)   # (R (x) id) delta = (id (x) L) delta
                for r in range(d):
                    a[r * d + k] += t[r, i, j]
                    b[d * d + r * d + k] += t[r, i, j]
                for m in range(d):
                    a[i * d + m] -= t[k, m, j]
                    b[d * d + j * d + m] -= t[k, i, m]
                    c[d * d + i * d + m] += t[k, m, j]
                    c[j * d + m] -= t[k, i, m]
                rows.extend([a % p, b % p, c % p])
    if not rows:
        return np.zeros((0, 2 * d * d), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def comultiplier_space(C: FpCoalgebra, bound: int = DEFAULT_SPACE_BOUND) -> MultiplierSpace:
    sp = solve_pair_space(comultiplier_equations(C), C.dim, C.p, bound)
    for h in sp.pairs:
        if not comultiplier_laws_hold(C, h.Lm, h.Rm):
            raise InternalVerificationFailed(f"emitted pair {h} fails the comultiplier laws")
    return sp


def comultiplier_space_via_dual(C: FpCoalgebra, bound: int = DEFAULT_SPACE_BOUND) -> List[LinearMultiplierPair]:
    """Transposes of the multiplier pairs of the dual algebra, sorted."""
    return sorted(h.transpose() for h in multiplier_space(dual_algebra(C), bound).pairs)


def comultiplier_laws_hold(C: FpCoalgebra, L, R) -> bool:
    """The three tensor identities, expanded on every basis vector."""
    t, p = C.tensor, C.p
    L, R = np.asarray(L), np.asarray(R)
    dL = np.einsum("rk,rij->kij", L, t) % p       # delta(L e_k)
    Ld = np.einsum("kmj,im->kij", t, L) % p       # (L (x) id) delta(e_k)
    dR = np.einsum("rk,rij->kij", R, t) % p
    Rd = np.einsum("kim,jm->kij", t, R) % p       # (id (x) R) delta(e_k)
    g = np.einsum("kim,jm->kij", t, L) % p        # (id (x) L) delta
    dd = np.einsum("kmj,im->kij", t, R) % p       # (R (x) id) delta
    return bool((dL == Ld).all() and (dR == Rd).all() and (g == dd).all())


def comultiplier_monoid(C: FpCoalgebra, space: Optional[MultiplierSpace] = None) -> PairMonoid:
    space = space or comultiplier_space(C)
    M = PairMonoid(C.p, space.pairs, reverse=True)
    M.verify()
    return M


def inner_comultiplier(C: FpCoalgebra, f) -> LinearMultiplierPair:
    """``L_f[j][k] = sum_i delta[k][i][j] f_i``, ``R_f[i][k] = sum_j delta[k][i][j] f_j``."""
    f = np.asarray(f, dtype=np.int64)
    L = np.einsum("kij,i->jk", C.tensor, f) % C.p
    R = np.einsum("kij,j->ik", C.tensor, f) % C.p
    return LinearMultiplierPair.of(L, R)


def dual_convolution(C: FpCoalgebra, bound: int = DEFAULT_CONV_BOUND) -> FiniteSemigroup:
    """Convolution semigroup on the ``p**d`` covectors, coordinate-lexicographic order."""
    if C.p ** C.dim > bound:
        from .errors import BoundExceeded

        raise BoundExceeded(f"{C.p}^{C.dim} covectors exceed the bound {bound}")
    F = C.covectors
    return FiniteSemigroup(gfp.vector_indices(C.convolve(F, F), C.p).tolist())


@dataclass
class CoalgebraInjectivityReport:
    left_identity: bool
    right_identity: bool
    conv_nondegenerate: bool
    canonical_injective: bool

    @property
    def implication_holds(self) -> bool:
        return not self.conv_nondegenerate or self.canonical_injective

    def to_dict(self) -> dict:
        return {
            "g o L_f == f.g": self.left_identity,
            "g o R_f == g.f": self.right_identity,
            "conv_nondegenerate": self.conv_nondegenerate,
            "canonical_injective": self.canonical_injective,
            "implication_holds": self.implication_holds,
        }


def inner_comultiplier_checks(C: FpCoalgebra, bound: int = DEFAULT_CONV_BOUND) -> CoalgebraInjectivityReport:
    F = C.covectors
    P = C.convolve(F, F)   # P[g, f] = g . f
    pairs = [inner_comultiplier(C, f) for f in F]
    Ls = np.array([h.Lm for h in pairs]).reshape(len(F), C.dim, C.dim)
    Rs = np.array([h.Rm for h in pairs]).reshape(len(F), C.dim, C.dim)
    gL = np.einsum("gj,fjk->gfk", F, Ls) % C.p    # g o L_f
    gR = np.einsum("gi,fik->gfk", F, Rs) % C.p    # g o R_f
    left = bool((gL == P.transpose(1, 0, 2)).all())
    right = bool((gR == P).all())
    nondeg = degeneracy_report(dual_convolution(C, bound)).nondegenerate
    return CoalgebraInjectivityReport(left, right, nondeg, len(set(pairs)) == len(pairs))


def inner_hom_law_holds(C: FpCoalgebra, M: Optional[PairMonoid] = None) -> bool:
    """``C(g . f) = C(g) * C(f)`` under the comultiplier product, each ``C(f)`` a comultiplier."""
    M = M or comultiplier_monoid(C)
    F = C.covectors
    P = C.convolve(F, F)
    inner = [inner_comultiplier(C, f) for f in F]
    if any(h not in M.index for h in inner):
        return False
    return all(inner_comultiplier(C, P[a, b]) == M.star(inner[a], inner[b])
               for a in range(len(F)) for b in range(len(F)))


def coalgebra_from_dict(obj: dict) -> FpCoalgebra:
    C = validate_coalgebra(obj["p"], obj["dim"], _require(obj, "comul"))
    if "mul" in obj and np.asarray(obj["mul"]).tolist() != C.tensor.transpose(1, 2, 0).tolist():
        raise AlgParseError("'mul' is not the dual of 'comul'")
    return C


def format_coalg(C: FpCoalgebra) -> str:
    return json.dumps(C.to_dict()) + "\n"


def read_coalgebra(path) -> FpCoalgebra:
    return coalgebra_from_dict(parse_alg_json(Path(path).read_text()))


# --- duality bridge ------------------------------------------------------------

@dataclass
class DualityReport:
    routes_agree: bool
    transpose_bijective: bool
    transpose_is_isomorphism: bool
    swapped_transpose_is_anti_isomorphism: bool
    plain_transpose_is_anti: bool
    size: int

    @property
    def ok(self) -> bool:
        return (self.routes_agree and self.transpose_bijective and self.transpose_is_isomorphism
                and self.swapped_transpose_is_anti_isomorphism)

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "routes_agree": self.routes_agree,
            "transpose_bijective": self.transpose_bijective,
            "transpose_is_isomorphism": self.transpose_is_isomorphism,
            "swapped_transpose_is_anti_isomorphism": self.swapped_transpose_is_anti_isomorphism,
            "plain_transpose_is_anti": self.plain_transpose_is_anti,
            "ok": self.ok,
        }


def duality_report(C: FpCoalgebra) -> DualityReport:
    """Compare the comultiplier monoid of ``C`` with multiplier monoids of its duals, table by table.

    ``(L, R) -> (L^T, R^T)`` into the dual algebra, and ``(L, R) -> (R^T, L^T)``
    into the opposite dual algebra. Transposition reverses composition and so
    does the comultiplier product, so the first map preserves products; the
    second reverses them.
    """
    CM = comultiplier_monoid(C)
    direct = list(CM.elements)
    via_dual = comultiplier_space_via_dual(C)
    MA = PairMonoid(C.p, multiplier_space(dual_algebra(C)).pairs)
    MO = PairMonoid(C.p, multiplier_space(dual_algebra(C, opposite=True)).pairs)
    m = len(CM)
    ct = CM.star_table
    T = [MA.index.get(h.transpose()) for h in CM.elements]
    S = [MO.index.get(LinearMultiplierPair.of(h.Rm.T, h.Lm.T)) for h in CM.elements]
    bij = None not in T and len(set(T)) == m == len(MA)
    sbij = None not in S and len(set(S)) == m == len(MO)
    iso = anti = plain_anti = False
    if bij:
        Ta = np.asarray(T)
        iso = bool((Ta[ct] == MA.star_table[Ta[:, None], Ta[None, :]]).all())
        plain_anti = bool((Ta[ct] == MA.star_table[Ta[None, :], Ta[:, None]]).all())
    if sbij:
        Sa = np.asarray(S)
        anti = bool((Sa[ct] == MO.star_table[Sa[None, :], Sa[:, None]]).all())
    return DualityReport(direct == via_dual, bij, iso, anti, plain_anti, m)
