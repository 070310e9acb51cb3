"""Finite-dimensional algebras over GF(p) and their multiplier monoids.

An algebra is given by structure constants: ``c[i][j][k]`` is the
coefficient of ``e_k`` in ``e_i e_j``. Linear maps are d x d matrices acting
on column vectors, so ``L e_k = sum_r L[r][k] e_r``.

The tensor product of GF(p)-vector spaces is used in its strict form on
chosen bases: ``GF(p) (x) V``, ``V (x) GF(p)`` and ``V`` are identified, as
are the two bracketings of a triple product. With that convention a
generalized element ``GF(p) -> A`` is just a coordinate vector, the
convolution product is the algebra product, and the concretization of a
pair ``(L, R)`` is the pair of set maps ``v -> Lv``, ``v -> Rv`` on the
``p**d`` vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import gfp
from .degeneracy import degeneracy_report
from .errors import (
    AlgebraError,
    AlgebraNotAssociative,
    AlgParseError,
    BoundExceeded,
    InternalVerificationFailed,
)
from .hull import TranslationalHull, hull
from .semigroup import FiniteSemigroup

DEFAULT_CONV_BOUND = 4096
DEFAULT_SPACE_BOUND = 1 << 16

Matrix = Tuple[Tuple[int, ...], ...]


def _as_matrix(a) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in np.asarray(a))


@dataclass(frozen=True)
class FpAlgebra:
    p: int
    dim: int
    c: Tuple[Tuple[Tuple[int, ...], ...], ...]
    unit: Optional[Tuple[int, ...]] = None

    @cached_property
    def tensor(self) -> np.ndarray:
        return np.asarray(self.c, dtype=np.int64).reshape(self.dim, self.dim, self.dim)

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x), np.asarray(y), self.tensor) % self.p

    def products(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """``out[a, b] = X[a] Y[b]`` for stacks of vectors."""
        return np.einsum("ai,bj,ijk->abk", X, Y, self.tensor) % self.p

    @cached_property
    def vectors(self) -> np.ndarray:
        return gfp.all_vectors(self.p, self.dim)

    def is_commutative(self) -> bool:
        return bool((self.tensor == self.tensor.transpose(1, 0, 2)).all())

    def to_dict(self) -> dict:
        d = {"p": self.p, "dim": self.dim, "mul": [[list(v) for v in row] for row in self.c]}
        if self.unit is not None:
            d["unit"] = list(self.unit)
        return d


def validate_algebra(p: int, dim: int, c, unit=None) -> FpAlgebra:
    gfp.check_prime(p)
    if dim < 0:
        raise AlgebraError(f"negative dimension {dim}")
    arr = np.asarray(c, dtype=object)
    if dim and arr.shape != (dim, dim, dim):
        raise AlgebraError(f"structure tensor has shape {arr.shape}, expected {(dim, dim, dim)}")
    arr = np.asarray(c, dtype=np.int64).reshape(dim, dim, dim) if dim else np.zeros((0, 0, 0), np.int64)
    if ((arr < 0) | (arr >= p)).any():
        i, j, k = (int(v) for v in np.argwhere((arr < 0) | (arr >= p))[0])
        raise AlgebraError(f"coefficient c[{i}][{j}][{k}] = {arr[i, j, k]} outside [0, {p})")
    # (e_i e_j) e_k = sum_m c[i,j,m] e_m e_k ;  e_i (e_j e_k) = sum_m c[j,k,m] e_i e_m
    lhs = np.einsum("ijm,mkr->ijkr", arr, arr) % p
    rhs = np.einsum("jkm,imr->ijkr", arr, arr) % p
    bad = np.argwhere((lhs != rhs).any(axis=3))
    if len(bad):
        raise AlgebraNotAssociative(*(int(v) for v in bad[0]))
    A = FpAlgebra(p, dim, tuple(_as_matrix(m) for m in arr),
                  None if unit is None else tuple(int(v) % p for v in unit))
    if unit is not None:
        if len(unit) != dim:
            raise AlgebraError("unit vector has the wrong length")
        u = np.asarray(A.unit)
        E = np.eye(dim, dtype=np.int64)
        if not ((A.products(u[None], E)[0] == E).all() and (A.products(E, u[None])[:, 0] == E).all()):
            raise AlgebraError("declared unit is not a two-sided identity")
    return A


def find_unit(A: FpAlgebra) -> Optional[Tuple[int, ...]]:
    E = np.eye(A.dim, dtype=np.int64)
    for u in A.vectors:
        if (A.products(u[None], E)[0] == E).all() and (A.products(E, u[None])[:, 0] == E).all():
            return tuple(int(v) for v in u)
    return None


# --- multiplier pairs -------------------------------------------------------

@dataclass(frozen=True, order=True)
class LinearMultiplierPair:
    L: Matrix
    R: Matrix

    @property
    def Lm(self) -> np.ndarray:
        return np.asarray(self.L, dtype=np.int64).reshape(len(self.L), len(self.L))

    @property
    def Rm(self) -> np.ndarray:
        return np.asarray(self.R, dtype=np.int64).reshape(len(self.R), len(self.R))

    @classmethod
    def of(cls, L, R) -> "LinearMultiplierPair":
        return cls(_as_matrix(L), _as_matrix(R))

    def transpose(self) -> "LinearMultiplierPair":
        return LinearMultiplierPair.of(self.Lm.T, self.Rm.T)


def _unknown_index(d: int):
    def L(r, k):
        return r * d + k

    def R(r, k):
        return d * d + r * d + k

    return L, R


def multiplier_equations(A: FpAlgebra) -> np.ndarray:
    """Homogeneous system on the ``2 d^2`` entries of ``(L, R)``.

    One row per basis pair ``(i, j)``, output coordinate ``r`` and law:
    ``L(e_i e_j) = L(e_i) e_j``, ``R(e_i e_j) = e_i R(e_j)`` and
    ``R(e_i) e_j = e_i L(e_j)``.
    """
    d, p, c = A.dim, A.p, A.tensor
    Li, Ri = _unknown_index(d)
    rows = []
    for i in range(d):
        for j in range(d):
            for r in range(d):
                left = np.zeros(2 * d * d, dtype=np.int64)
                right = np.zeros(2 * d * d, dtype=np.int64)
                link = np.zeros(2 * d * d, dtype=np.int64)
                for k in range(d):
                    left[Li(r, k)] += c[i, j, k]
                    right[Ri(r, k)] += c[i, j, k]
                for m in range(d):
                    left[Li(m, i)] -= c[m, j, r]
                    right[Ri(m, j)] -= c[i, m, r]
                    link[Ri(m, i)] += c[m, j, r]
                    link[Li(m, j)] -= c[i, m, r]
                rows.extend([left % p, right % p, link % p])
    if not rows:
        return np.zeros((0, 2 * d * d), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def _pair_from_vector(x: np.ndarray, d: int) -> LinearMultiplierPair:
    return LinearMultiplierPair.of(x[: d * d].reshape(d, d), x[d * d:].reshape(d, d))


@dataclass(frozen=True)
class MultiplierSpace:
    pairs: Tuple[LinearMultiplierPair, ...]
    basis: np.ndarray
    equations: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.basis)


def solve_pair_space(equations: np.ndarray, d: int, p: int, bound: int = DEFAULT_SPACE_BOUND) -> MultiplierSpace:
    basis = gfp.nullspace(equations, p) if equations.size else np.eye(2 * d * d, dtype=np.int64)
    if not gfp.verify_nullspace(equations, basis, p):
        raise InternalVerificationFailed("nullspace basis does not solve the multiplier equations")
    if p ** len(basis) > bound:
        raise BoundExceeded(f"{p}^{len(basis)} solutions exceed the bound {bound}")
    pairs = sorted(_pair_from_vector(x, d) for x in gfp.span(basis, p))
    return MultiplierSpace(tuple(pairs), basis, equations)


def multiplier_space(A: FpAlgebra, bound: int = DEFAULT_SPACE_BOUND) -> MultiplierSpace:
    """All multiplier pairs of ``A``, sorted, from the nullspace of :func:`multiplier_equations`."""
    sp = solve_pair_space(multiplier_equations(A), A.dim, A.p, bound)
    ident = LinearMultiplierPair.of(np.eye(A.dim, dtype=np.int64), np.eye(A.dim, dtype=np.int64))
    if ident not in sp.pairs:
        raise InternalVerificationFailed("(id, id) is not among the multiplier pairs")
    return sp


def pair_laws_hold(A: FpAlgebra, L, R) -> bool:
    """The three multiplier laws evaluated on every pair of vectors."""
    p, V = A.p, A.vectors
    L, R = np.asarray(L), np.asarray(R)
    XY = A.products(V, V)
    VL, VR = (V @ L.T) % p, (V @ R.T) % p
    return bool(
        ((XY @ L.T) % p == A.products(VL, V)).all()
        and ((XY @ R.T) % p == A.products(V, VR)).all()
        and (A.products(VR, V) == A.products(V, VL)).all()
    )


def naive_multiplier_pairs(A: FpAlgebra) -> List[LinearMultiplierPair]:
    """Every pair of d x d matrices over GF(p) that satisfies the laws; exponential oracle."""
    d, p = A.dim, A.p
    mats = [m.reshape(d, d) for m in gfp.all_vectors(p, d * d)]
    out = []
    for L in mats:
        for R in mats:
            if pair_laws_hold(A, L, R):
                out.append(LinearMultiplierPair.of(L, R))
    return sorted(out)


# --- monoid of pairs --------------------------------------------------------

class PairMonoid:
    """Matrix pairs closed under a star product.

    ``reverse=False``: ``(L', R') * (L, R) = (L' L, R R')`` (multipliers).
    ``reverse=True``:  ``(L', R') * (L, R) = (L L', R' R)`` (comultipliers).
    """

    def __init__(self, p: int, elements: Sequence[LinearMultiplierPair], reverse: bool = False):
        self.p = p
        self.reverse = reverse
        self.elements = tuple(elements)
        self.index: Dict[LinearMultiplierPair, int] = {e: i for i, e in enumerate(self.elements)}
        d = len(self.elements[0].L) if self.elements else 0
        self.dim = d
        ident = LinearMultiplierPair.of(np.eye(d, dtype=np.int64), np.eye(d, dtype=np.int64))
        if ident not in self.index:
            raise InternalVerificationFailed("(id, id) missing from the pair list")
        self.identity_index = self.index[ident]

    def __len__(self) -> int:
        return len(self.elements)

    def star(self, a: LinearMultiplierPair, b: LinearMultiplierPair) -> LinearMultiplierPair:
        p = self.p
        if self.reverse:
            return LinearMultiplierPair.of(gfp.matmul(b.Lm, a.Lm, p), gfp.matmul(a.Rm, b.Rm, p))
        return LinearMultiplierPair.of(gfp.matmul(a.Lm, b.Lm, p), gfp.matmul(b.Rm, a.Rm, p))

    @cached_property
    def star_table(self) -> np.ndarray:
        m, d, p = len(self), self.dim, self.p
        Ls = np.array([e.Lm for e in self.elements], dtype=np.int64).reshape(m, d, d)
        Rs = np.array([e.Rm for e in self.elements], dtype=np.int64).reshape(m, d, d)
        if self.reverse:
            CL = np.einsum("bij,ajk->abik", Ls, Ls) % p
            CR = np.einsum("aij,bjk->abik", Rs, Rs) % p
        else:
            CL = np.einsum("aij,bjk->abik", Ls, Ls) % p
            CR = np.einsum("bij,ajk->abik", Rs, Rs) % p
        w = p ** np.arange(2 * d * d - 1, -1, -1, dtype=np.int64)
        keys = np.concatenate([Ls.reshape(m, -1), Rs.reshape(m, -1)], axis=1) @ w
        ckeys = np.concatenate([CL.reshape(m, m, -1), CR.reshape(m, m, -1)], axis=2) @ w
        order = np.argsort(keys)
        pos = np.minimum(np.searchsorted(keys[order], ckeys), m - 1)
        if not (keys[order][pos] == ckeys).all():
            raise InternalVerificationFailed("pair set is not closed under the star product")
        return order[pos]

    def verify(self) -> None:
        tab, e = self.star_table, self.identity_index
        ar = np.arange(len(self))
        if not ((tab[e] == ar).all() and (tab[:, e] == ar).all()):
            raise InternalVerificationFailed("(id, id) is not a two-sided identity")
        from .semigroup import first_nonassociative_triple

        if len(self) <= 256 and first_nonassociative_triple(tab) is not None:
            raise InternalVerificationFailed("star table is not associative")

    def to_dict(self) -> dict:
        return {
            "elements": [{"L": [list(r) for r in e.L], "R": [list(r) for r in e.R]} for e in self.elements],
            "identity": self.identity_index,
            "star_table": self.star_table.tolist(),
        }


def multiplier_monoid(A: FpAlgebra, space: Optional[MultiplierSpace] = None) -> PairMonoid:
    space = space or multiplier_space(A)
    M = PairMonoid(A.p, space.pairs, reverse=False)
    M.verify()
    return M


# --- generalized elements and inner multipliers ------------------------------

def left_mult_matrix(A: FpAlgebra, f) -> np.ndarray:
    """``L_f`` with ``L_f v = f v``: ``L_f[r][k] = sum_i f_i c[i][k][r]``."""
    return np.einsum("i,ikr->rk", np.asarray(f, dtype=np.int64), A.tensor) % A.p


def right_mult_matrix(A: FpAlgebra, f) -> np.ndarray:
    """``R_f`` with ``R_f v = v f``: ``R_f[r][k] = sum_j f_j c[k][j][r]``."""
    return np.einsum("j,kjr->rk", np.asarray(f, dtype=np.int64), A.tensor) % A.p


def inner_multiplier(A: FpAlgebra, f) -> LinearMultiplierPair:
    return LinearMultiplierPair.of(left_mult_matrix(A, f), right_mult_matrix(A, f))


def inner_pairs(A: FpAlgebra) -> List[LinearMultiplierPair]:
    return [inner_multiplier(A, v) for v in A.vectors]


def inner_hom_law_holds(A: FpAlgebra, M: Optional[PairMonoid] = None) -> bool:
    """``(L_f, R_f) * (L_g, R_g) = (L_fg, R_fg)`` for all vectors, each inner pair in ``Mult(A)``."""
    M = M or multiplier_monoid(A)
    V = A.vectors
    P = A.products(V, V)
    inner = [inner_multiplier(A, v) for v in V]
    if any(h not in M.index for h in inner):
        return False
    return all(inner_multiplier(A, P[a, b]) == M.star(inner[a], inner[b])
               for a in range(len(V)) for b in range(len(V)))


def check_bound(A: FpAlgebra, bound: int) -> None:
    if A.p ** A.dim > bound:
        raise BoundExceeded(f"{A.p}^{A.dim} vectors exceed the bound {bound}")


def convolution_semigroup(A: FpAlgebra, bound: int = DEFAULT_CONV_BOUND) -> FiniteSemigroup:
    """The multiplicative semigroup on all ``p**d`` vectors, in coordinate-lexicographic order."""
    check_bound(A, bound)
    V = A.vectors
    tab = gfp.vector_indices(A.products(V, V), A.p)
    return FiniteSemigroup(tab.tolist())


def _induced_map(M: np.ndarray, A: FpAlgebra) -> Tuple[int, ...]:
    return tuple(int(v) for v in gfp.vector_indices((A.vectors @ M.T) % A.p, A.p))


def conc_pair(A: FpAlgebra, h: LinearMultiplierPair):
    """``(v -> Lv, v -> Rv)`` as self-maps of the vector indices."""
    return _induced_map(h.Lm, A), _induced_map(h.Rm, A)


@dataclass
class ConcretizationReport:
    map: Tuple[int, ...]
    mult_size: int
    hull_size: int
    injective: bool
    surjective: bool
    monoid_hom: bool

    @property
    def concrete(self) -> bool:
        return self.surjective

    def summary(self) -> str:
        inj = "injective" if self.injective else "not injective"
        sur = "surjective" if self.surjective else "not surjective"
        verdict = "concrete" if self.concrete else "NOT concrete"
        return f"{inj}, {sur}: {verdict} ({self.mult_size} -> {self.hull_size})"

    def to_dict(self) -> dict:
        return {
            "map": list(self.map), "mult_size": self.mult_size, "hull_size": self.hull_size,
            "injective": self.injective, "surjective": self.surjective,
            "monoid_hom": self.monoid_hom, "concrete": self.concrete,
        }


def concretization(A: FpAlgebra, M: Optional[PairMonoid] = None, H: Optional[TranslationalHull] = None,
                   bound: int = DEFAULT_CONV_BOUND) -> ConcretizationReport:
    """Send each multiplier pair to the hull element it induces on the convolution semigroup."""
    M = M or multiplier_monoid(A)
    H = H or hull(convolution_semigroup(A, bound), verify=False)
    images = []
    for h in M.elements:
        pair = conc_pair(A, h)
        if pair not in H.index:
            raise InternalVerificationFailed(f"concretization of {h} is not a multiplier of Conv")
        images.append(H.index[pair])
    mp = tuple(images)
    tab = M.star_table
    pairs = [H.elements[i].pair for i in mp]
    from .hull import star

    hom = mp[M.identity_index] == H.identity_index and all(
        H.index.get(star(pairs[a], pairs[b])) == mp[tab[a, b]]
        for a in range(len(M)) for b in range(len(M))
    )
    return ConcretizationReport(mp, len(M), len(H), len(set(mp)) == len(mp),
                                len(set(mp)) == len(H), hom)


def is_concrete(A: FpAlgebra, bound: int = DEFAULT_CONV_BOUND) -> bool:
    return concretization(A, bound=bound).concrete


# --- structural predicates ---------------------------------------------------

def is_faithful(A: FpAlgebra) -> bool:
    """Both annihilators are zero: ``xA = 0`` or ``Ax = 0`` forces ``x = 0``."""
    d, p, c = A.dim, A.p, A.tensor
    if d == 0:
        return True
    # y -> (e_i y)_i and y -> (y e_i)_i as stacked d^2 x d matrices
    left_stack = np.concatenate([c[i, :, :].T for i in range(d)], axis=0)
    right_stack = np.concatenate([c[:, i, :].T for i in range(d)], axis=0)
    return gfp.rank(left_stack, p) == d and gfp.rank(right_stack, p) == d


def multiplication_onto(A: FpAlgebra) -> bool:
    """The products ``e_i e_j`` span ``A``."""
    if A.dim == 0:
        return True
    return gfp.rank(A.tensor.reshape(A.dim * A.dim, A.dim), A.p) == A.dim


@dataclass
class InjectivityReportLinear:
    left_identity: bool
    right_identity: bool
    conv_nondegenerate: bool
    canonical_injective: bool
    first_collision: Optional[Tuple[int, int]]

    @property
    def implication_holds(self) -> bool:
        return not self.conv_nondegenerate or self.canonical_injective

    def to_dict(self) -> dict:
        return {
            "L_f(g) == f*g": self.left_identity,
            "R_f(g) == g*f": self.right_identity,
            "conv_nondegenerate": self.conv_nondegenerate,
            "canonical_injective": self.canonical_injective,
            "first_collision": None if self.first_collision is None else list(self.first_collision),
            "implication_holds": self.implication_holds,
        }


def canonical_map_injectivity(A: FpAlgebra, bound: int = DEFAULT_CONV_BOUND) -> InjectivityReportLinear:
    """Check ``L_f g = f g`` and ``R_f g = g f`` on all pairs, then injectivity of ``f -> (L_f, R_f)``."""
    check_bound(A, bound)
    V, p = A.vectors, A.p
    P = A.products(V, V)
    Ls = np.einsum("fi,ikr->frk", V, A.tensor) % p
    Rs = np.einsum("fj,kjr->frk", V, A.tensor) % p
    left_ok = bool(((np.einsum("frk,gk->fgr", Ls, V) % p) == P).all())
    right_ok = bool(((np.einsum("frk,gk->gfr", Rs, V) % p) == P).all())
    nondeg = degeneracy_report(convolution_semigroup(A, bound)).nondegenerate
    seen: Dict[tuple, int] = {}
    collision = None
    for f in range(len(V)):
        key = (Ls[f].tobytes(), Rs[f].tobytes())
        if key in seen and collision is None:
            collision = (seen[key], f)
        seen.setdefault(key, f)
    return InjectivityReportLinear(left_ok, right_ok, nondeg, collision is None, collision)


# --- .alg files --------------------------------------------------------------

def _require(obj: dict, key: str):
    if key not in obj:
        raise AlgParseError(f"missing key {key!r}")
    return obj[key]


def parse_alg_json(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(obj, dict):
        raise AlgParseError("top level must be a JSON object")
    p, dim = _require(obj, "p"), _require(obj, "dim")
    if not isinstance(p, int) or not isinstance(dim, int):
        raise AlgParseError("'p' and 'dim' must be integers")
    return obj


def algebra_from_dict(obj: dict) -> FpAlgebra:
    """``mul[i][j]`` is the coordinate vector of ``e_i e_j``, i.e. ``c[i][j]``."""
    return validate_algebra(obj["p"], obj["dim"], _require(obj, "mul"), obj.get("unit"))


def read_algebra(path) -> FpAlgebra:
    return algebra_from_dict(parse_alg_json(Path(path).read_text()))


def format_alg(A: FpAlgebra) -> str:
    return json.dumps(A.to_dict()) + "\n"
