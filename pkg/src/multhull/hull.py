"""Translations, multipliers and the translational hull of a finite semigroup.

A multiplier is a pair ``(L, R)`` of self-maps with

    L(x*y) = L(x)*y,   R(x*y) = x*R(y),   R(y)*z = y*L(z).

The hull is the monoid of all multipliers under
``(L', R') * (L, R) = (L' o L, R o R')`` with unit ``(id, id)``.
Elements are kept in lexicographic order of ``(L, R)``, which fixes the
layout of the star table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import HullClosureViolation, IncompatibleCarrier
from .semigroup import (
    FiniteSemigroup,
    SelfMap,
    canonical_homomorphism,
    first_nonassociative_triple,
    identity_map,
)

# Full triple associativity of a star table is checked up to this many
# elements; beyond it the table is checked entry by entry against composition.
ASSOC_CHECK_LIMIT = 256


@dataclass(frozen=True, order=True)
class Multiplier:
    L: SelfMap
    R: SelfMap
    inner_witnesses: Tuple[int, ...] = field(default=(), compare=False)

    @property
    def pair(self) -> Tuple[SelfMap, SelfMap]:
        return (self.L, self.R)

    @property
    def is_inner(self) -> bool:
        return bool(self.inner_witnesses)

    @property
    def is_diagonal(self) -> bool:
        return self.L == self.R


def star(a: Tuple[SelfMap, SelfMap], b: Tuple[SelfMap, SelfMap]) -> Tuple[SelfMap, SelfMap]:
    """``(L', R') * (L, R) = (L' o L, R o R')`` on raw pairs."""
    (L1, R1), (L2, R2) = a, b
    return tuple(L1[v] for v in L2), tuple(R2[v] for v in R1)


# --- law predicates ----------------------------------------------------------

def is_left_translation(S: FiniteSemigroup, L: Sequence[int]) -> bool:
    t = S.table
    return all(L[t[x][y]] == t[L[x]][y] for x in range(S.n) for y in range(S.n))


def is_right_translation(S: FiniteSemigroup, R: Sequence[int]) -> bool:
    t = S.table
    return all(R[t[x][y]] == t[x][R[y]] for x in range(S.n) for y in range(S.n))


def is_linked(S: FiniteSemigroup, L: Sequence[int], R: Sequence[int]) -> bool:
    t = S.table
    return all(t[R[y]][z] == t[y][L[z]] for y in range(S.n) for z in range(S.n))


def is_multiplier(S: FiniteSemigroup, L: Sequence[int], R: Sequence[int]) -> bool:
    return is_left_translation(S, L) and is_right_translation(S, R) and is_linked(S, L, R)


# --- enumeration -------------------------------------------------------------

def _backtrack_maps(n: int, constraints: List[List[Tuple[int, int, int]]], holds) -> List[SelfMap]:
    """All maps ``img`` satisfying every constraint, assigned in index order.

    ``constraints[k]`` lists the triples that become decidable once
    ``img[k]`` is fixed; ``holds(img, triple)`` evaluates one of them.
    """
    out: List[SelfMap] = []
    img = [0] * n

    def go(k: int) -> None:
        if k == n:
            out.append(tuple(img))
            return
        for v in range(n):
            img[k] = v
            if all(holds(img, c) for c in constraints[k]):
                go(k + 1)

    go(0)
    return out


def left_translations(S: FiniteSemigroup) -> List[SelfMap]:
    """Self-maps with ``L(x*y) = L(x)*y``, in lexicographic order."""
    n, t = S.n, S.table
    cons: List[List[Tuple[int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            cons[max(x, xy)].append((x, y, xy))

    def holds(img, c):
        x, y, xy = c
        return img[xy] == t[img[x]][y]

    return _backtrack_maps(n, cons, holds)


def right_translations(S: FiniteSemigroup) -> List[SelfMap]:
    """Self-maps with ``R(x*y) = x*R(y)``, in lexicographic order."""
    n, t = S.n, S.table
    cons: List[List[Tuple[int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            cons[max(y, xy)].append((x, y, xy))

    def holds(img, c):
        x, y, xy = c
        return img[xy] == t[x][img[y]]

    return _backtrack_maps(n, cons, holds)


def g_table(S: FiniteSemigroup, L: SelfMap) -> Tuple[Tuple[int, ...], ...]:
    """``g(L)[x][z] = x * L(z)``"""
    t = S.table
    return tuple(tuple(t[x][L[z]] for z in range(S.n)) for x in range(S.n))


def d_table(S: FiniteSemigroup, R: SelfMap) -> Tuple[Tuple[int, ...], ...]:
    """``d(R)[y][z] = R(y) * z``"""
    t = S.table
    return tuple(tuple(t[R[y]][z] for z in range(S.n)) for y in range(S.n))


def _inner_index(S: FiniteSemigroup) -> Dict[Tuple[SelfMap, SelfMap], Tuple[int, ...]]:
    wit: Dict[Tuple[SelfMap, SelfMap], List[int]] = {}
    for x, pair in enumerate(canonical_homomorphism(S)):
        wit.setdefault(pair, []).append(x)
    return {k: tuple(v) for k, v in wit.items()}


def multipliers(S: FiniteSemigroup) -> List[Multiplier]:
    """All multipliers, as the fibre product of ``g`` and ``d`` over n x n tables."""
    by_key: Dict[tuple, List[SelfMap]] = {}
    for L in left_translations(S):
        by_key.setdefault(g_table(S, L), []).append(L)
    inner = _inner_index(S)
    out = []
    for R in right_translations(S):
        for L in by_key.get(d_table(S, R), ()):
            out.append(Multiplier(L, R, inner.get((L, R), ())))
    out.sort()
    return out


def _all_maps(n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(n), repeat=n)), dtype=np.int64)


def naive_multipliers(S: FiniteSemigroup) -> List[Tuple[SelfMap, SelfMap]]:
    """Brute force over all ``n^n x n^n`` pairs of maps; a test oracle for small n."""
    n = S.n
    maps = _all_maps(n)
    if n == 0:
        return [((), ())]
    t = S.array
    ar = np.arange(n)
    # left[k, x, y]:   L(x*y) == L(x)*y
    left = (maps[:, t] == t[maps[:, :, None], ar[None, None, :]]).all(axis=(1, 2))
    # right[k, x, y]:  R(x*y) == x*R(y)
    right = (maps[:, t] == t[ar[None, :, None], maps[:, None, :]]).all(axis=(1, 2))
    # linking for every (L, R): R(y)*z == y*L(z)
    lhs = t[maps[:, :, None], ar[None, None, :]].reshape(len(maps), -1)  # indexed by R
    rhs = t[ar[None, :, None], maps[:, None, :]].reshape(len(maps), -1)  # indexed by L
    linked = (rhs[:, None, :] == lhs[None, :, :]).all(axis=2)  # [L, R]
    ok = linked & left[:, None] & right[None, :]
    return [(tuple(int(v) for v in maps[a]), tuple(int(v) for v in maps[b]))
            for a, b in np.argwhere(ok)]


# --- the hull monoid ---------------------------------------------------------

class TranslationalHull:
    """The monoid of multipliers of ``base``.

    The star table is computed on first access; for large hulls it is built
    with vectorized composition and integer keys instead of Python tuples.
    """

    def __init__(self, base: FiniteSemigroup, elements: Sequence[Multiplier]):
        self.base = base
        self.elements: Tuple[Multiplier, ...] = tuple(elements)
        self.index: Dict[Tuple[SelfMap, SelfMap], int] = {
            m.pair: i for i, m in enumerate(self.elements)
        }
        ident = identity_map(base.n)
        if (ident, ident) not in self.index:
            raise HullClosureViolation("(id, id) is missing from the multiplier list")
        self.identity_index = self.index[(ident, ident)]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def inner_count(self) -> int:
        return sum(1 for m in self.elements if m.is_inner)

    @property
    def outer_count(self) -> int:
        return len(self) - self.inner_count

    @cached_property
    def L_array(self) -> np.ndarray:
        return np.array([m.L for m in self.elements], dtype=np.int64).reshape(len(self), self.base.n)

    @cached_property
    def R_array(self) -> np.ndarray:
        return np.array([m.R for m in self.elements], dtype=np.int64).reshape(len(self), self.base.n)

    def lookup(self, pair: Tuple[SelfMap, SelfMap]) -> int:
        try:
            return self.index[(tuple(pair[0]), tuple(pair[1]))]
        except KeyError:
            raise HullClosureViolation(f"{pair} is not an element of the hull") from None

    def star_index(self, a: int, b: int) -> int:
        return self.lookup(star(self.elements[a].pair, self.elements[b].pair))

    @cached_property
    def star_table(self) -> np.ndarray:
        m, n = len(self), self.base.n
        if n == 0 or m <= 64:
            tab = np.empty((m, m), dtype=np.int64)
            for a in range(m):
                for b in range(m):
                    tab[a, b] = self.star_index(a, b)
            return tab
        return _vectorized_star(self.L_array, self.R_array, n)

    def canonical_indices(self) -> Tuple[int, ...]:
        """Hull index of the inner multiplier of each base element."""
        return tuple(self.lookup(p) for p in canonical_homomorphism(self.base))

    def monoid_table(self) -> FiniteSemigroup:
        return FiniteSemigroup(self.star_table.tolist())

    def verify(self) -> None:
        """Re-check identity, closure, and associativity of the star table."""
        tab = self.star_table
        m = len(self)
        e = self.identity_index
        ar = np.arange(m)
        if m and not ((tab[e] == ar).all() and (tab[:, e] == ar).all()):
            raise HullClosureViolation("(id, id) is not a two-sided identity in the star table")
        if m <= ASSOC_CHECK_LIMIT:
            bad = first_nonassociative_triple(tab)
            if bad is not None:
                raise HullClosureViolation(f"star table not associative at {bad}")
        else:
            # composition of maps is associative; check each entry really is the composite
            La, Ra = self.L_array, self.R_array
            for a in range(m):
                if not ((La[tab[a]] == La[a][La]).all() and (Ra[tab[a]] == Ra[:, Ra[a]]).all()):
                    raise HullClosureViolation(f"star table row {a} disagrees with composition")

    def to_dict(self) -> dict:
        return {
            "order": self.base.n,
            "table": [list(r) for r in self.base.table],
            "elements": [
                {"L": list(m.L), "R": list(m.R), "inner": list(m.inner_witnesses)}
                for m in self.elements
            ],
            "identity": self.identity_index,
            "star_table": self.star_table.tolist(),
            "counts": {"total": len(self), "inner": self.inner_count, "outer": self.outer_count},
        }


def _vectorized_star(La: np.ndarray, Ra: np.ndarray, n: int) -> np.ndarray:
    m = len(La)
    if n ** (2 * n) >= 2 ** 62:
        raise OverflowError("carrier too large for integer multiplier keys")
    wL = n ** np.arange(2 * n - 1, n - 1, -1, dtype=np.int64)
    wR = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    keys = La @ wL + Ra @ wR
    order = np.argsort(keys)
    skeys = keys[order]
    tab = np.empty((m, m), dtype=np.int64)
    chunk = max(1, 2 ** 22 // max(1, m * n))
    for a0 in range(0, m, chunk):
        a1 = min(m, a0 + chunk)
        comp_L = La[a0:a1][:, La]            # [a, b, k] = L_a(L_b(k))
        comp_R = Ra[:, Ra[a0:a1]]            # [b, a, k] = R_b(R_a(k))
        k = comp_L @ wL + np.swapaxes(comp_R, 0, 1) @ wR
        pos = np.searchsorted(skeys, k)
        pos = np.minimum(pos, m - 1)
        if not (skeys[pos] == k).all():
            raise HullClosureViolation("a composite multiplier is missing from the hull")
        tab[a0:a1] = order[pos]
    return tab


def hull(S: FiniteSemigroup, verify: bool = True) -> TranslationalHull:
    H = TranslationalHull(S, multipliers(S))
    if verify:
        H.verify()
    return H


def naive_hull(S: FiniteSemigroup) -> Tuple[List[Tuple[SelfMap, SelfMap]], List[List[int]]]:
    """Elements and star table from the brute-force filter, with dict lookup."""
    elems = sorted(naive_multipliers(S))
    idx = {p: i for i, p in enumerate(elems)}
    tab = [[idx[star(a, b)] for b in elems] for a in elems]
    return elems, tab


def hull_from_dict(d: dict) -> TranslationalHull:
    """Rebuild a hull from :meth:`TranslationalHull.to_dict` output, recomputing everything.

    The stored element list and star table must coincide with the
    recomputed ones; a mismatch raises ``HullClosureViolation``.
    """
    S = FiniteSemigroup(d["table"])
    H = hull(S)
    if H.to_dict() != d:
        raise HullClosureViolation("stored hull report disagrees with recomputation")
    return H


# --- functoriality along carrier maps -----------------------------------------

def push_forward(S: FiniteSemigroup, h, f: Optional[Sequence[int]] = None):
    """Transport a multiplier along a carrier bijection ``f`` (``None`` = identity).

    Returns the pair ``(f o L o f^-1, f o R o f^-1)``.
    """
    L, R = (h.L, h.R) if isinstance(h, Multiplier) else h
    if len(L) != S.n or len(R) != S.n:
        raise IncompatibleCarrier(f"multiplier acts on {len(L)} points, carrier has {S.n}")
    if f is None:
        return tuple(L), tuple(R)
    f = tuple(f)
    if sorted(f) != list(range(S.n)):
        raise IncompatibleCarrier(f"carrier map {f} is not a bijection of {S.n} points")
    inv = [0] * S.n
    for x, fx in enumerate(f):
        inv[fx] = x
    return (tuple(f[L[inv[y]]] for y in range(S.n)),
            tuple(f[R[inv[y]]] for y in range(S.n)))


def swap(h) -> Tuple[SelfMap, SelfMap]:
    """``(L, R) -> (R, L)``, a multiplier of the opposite semigroup."""
    L, R = (h.L, h.R) if isinstance(h, Multiplier) else h
    return tuple(R), tuple(L)
