"""Extending homomorphisms into translational hulls to the whole hull.

Homomorphisms ``S -> |hull(T)|`` are given as tuples of hull indices of
``T``. Every construction re-verifies its defining equations, and, for hulls
up to ``max_hull`` elements, its uniqueness by an exhaustive search over
monoid homomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .degeneracy import (
    degeneracy_report,
    is_nondegenerate_map,
    is_translation_nondegenerate,
)
from .errors import InternalVerificationFailed, PreconditionFailed
from .hull import TranslationalHull, hull
from .semigroup import FiniteMonoid, FiniteSemigroup, hom_violation

DEFAULT_MAX_HULL = 64


@dataclass(frozen=True)
class MonoidHom:
    """A map between finite monoids given by star tables and identity indices."""

    src_table: np.ndarray = field(repr=False)
    src_identity: int
    dst_table: np.ndarray = field(repr=False)
    dst_identity: int
    map: Tuple[int, ...]

    def violation(self):
        m = np.asarray(self.map, dtype=np.int64)
        if len(m) and m[self.src_identity] != self.dst_identity:
            return ("identity",)
        lhs = m[self.src_table]
        rhs = self.dst_table[m[:, None], m[None, :]]
        bad = np.argwhere(lhs != rhs)
        return None if len(bad) == 0 else tuple(int(v) for v in bad[0])

    def is_valid(self) -> bool:
        return self.violation() is None


def _hull_hom(src: TranslationalHull, dst: TranslationalHull, mp) -> MonoidHom:
    return MonoidHom(src.star_table, src.identity_index, dst.star_table, dst.identity_index, tuple(mp))


def _monoid_arrays(M: FiniteMonoid):
    return np.asarray(M.table, dtype=np.int64).reshape(M.n, M.n), M.e


def enumerate_monoid_homs(src_tab, src_e: int, dst_tab, dst_e: int,
                          fixed: Sequence[Tuple[int, int]] = (),
                          candidates: Optional[Sequence[Sequence[int]]] = None) -> Iterator[Tuple[int, ...]]:
    """All monoid homomorphisms ``g`` with ``g(a) = v`` for each ``(a, v)`` in ``fixed``.

    Backtracking with forward propagation: once ``g(a)`` and ``g(b)`` are
    known, ``g(a*b)`` is forced to ``g(a)*g(b)``. ``candidates[a]``, when
    given, must contain every value ``g(a)`` can take in a solution; it only
    narrows branching.
    """
    src_tab = np.asarray(src_tab)
    dst_tab = np.asarray(dst_tab)
    m, k = len(src_tab), len(dst_tab)
    st = src_tab.tolist()
    dt = dst_tab.tolist()
    allowed = None if candidates is None else [set(c) for c in candidates]
    start: Dict[int, int] = {src_e: dst_e}
    for a, v in fixed:
        if start.get(a, v) != v:
            return
        start[a] = v

    def propagate(assign: Dict[int, int]) -> bool:
        changed = True
        while changed:
            changed = False
            for a, ga in list(assign.items()):
                row, drow = st[a], dt[ga]
                for b, gb in list(assign.items()):
                    c, want = row[b], drow[gb]
                    have = assign.get(c)
                    if have is None:
                        if allowed is not None and want not in allowed[c]:
                            return False
                        assign[c] = want
                        changed = True
                    elif have != want:
                        return False
        return True

    def go(assign: Dict[int, int]) -> Iterator[Tuple[int, ...]]:
        if allowed is not None and any(v not in allowed[a] for a, v in assign.items()):
            return
        if not propagate(assign):
            return
        if len(assign) == m:
            yield tuple(assign[a] for a in range(m))
            return
        a = next(x for x in range(m) if x not in assign)
        for v in (range(k) if allowed is None else sorted(allowed[a])):
            nxt = dict(assign)
            nxt[a] = v
            yield from go(nxt)

    yield from go(start)


@dataclass
class ExtensionResult:
    """Outcome of one extension: the map and what was verified about it."""

    map: Tuple[int, ...]
    checks: Dict[str, bool]
    uniqueness_checked: bool
    solutions_found: Optional[int] = None
    note: str = ""

    @property
    def unique(self) -> Optional[bool]:
        return None if not self.uniqueness_checked else self.solutions_found == 1

    def to_dict(self) -> dict:
        return {
            "map": list(self.map),
            "checks": dict(self.checks),
            "uniqueness_checked": self.uniqueness_checked,
            "solutions_found": self.solutions_found,
            "note": self.note,
        }


def _first_bad_hom_pair(S: FiniteSemigroup, star_table: np.ndarray, f: Sequence[int]):
    t = S.table
    for x in range(S.n):
        for y in range(S.n):
            if f[t[x][y]] != star_table[f[x], f[y]]:
                return (x, y)
    return None


def _require_nondegenerate(T: FiniteSemigroup, name: str) -> None:
    rep = degeneracy_report(T)
    if not rep.nondegenerate:
        side = "left_nondeg" if not rep.left_nondeg else "right_nondeg"
        raise PreconditionFailed(f"{name} is not {side.replace('_nondeg', '')} non-degenerate",
                                 rep.witnesses[side])


def _require_sem_nd(S: FiniteSemigroup, name: str) -> None:
    rep = degeneracy_report(S)
    if not rep.globally_idempotent:
        raise PreconditionFailed(f"{name} is not globally idempotent", rep.witnesses["globally_idempotent"])
    _require_nondegenerate(S, name)


def _require_translation_nondeg(pairs, n: int, name: str) -> None:
    rep = is_translation_nondegenerate(pairs, n)
    if not rep.ok:
        side, miss = ("left", rep.left_missing) if not rep.left_ok else ("right", rep.right_missing)
        raise PreconditionFailed(f"{name} is not translation non-degenerate ({side} orbits miss an element)",
                                 miss)


def extend_sharp(S: FiniteSemigroup, T: FiniteSemigroup, f: Sequence[int],
                 HS: Optional[TranslationalHull] = None, HT: Optional[TranslationalHull] = None,
                 max_hull: int = DEFAULT_MAX_HULL) -> ExtensionResult:
    """The unique monoid hom ``hull(S) -> hull(T)`` restricting to ``f`` along the canonical map.

    ``f[s]`` is an index into ``hull(T)``. For ``u = f_L(s)(t)`` (least such
    ``(s, t)``) the image of ``(L, R)`` sends ``u`` to ``f_L(L(s))(t)``; the
    right component is built the same way from ``u = f_R(s)(t)``.
    """
    HS = HS or hull(S)
    HT = HT or hull(T)
    f = tuple(int(v) for v in f)
    if len(f) != S.n or any(not 0 <= v < len(HT) for v in f):
        raise PreconditionFailed("f must list one hull(T) index per element of S", f)
    _require_nondegenerate(T, "T")
    bad = _first_bad_hom_pair(S, HT.star_table, f)
    if bad is not None:
        raise PreconditionFailed("f is not a homomorphism into the hull of T", bad)
    pairs = [HT.elements[v].pair for v in f]
    _require_translation_nondeg(pairs, T.n, "f")

    n = T.n
    left_dec: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    right_dec: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for s in range(S.n):
        fL, fR = pairs[s]
        for t in range(n):
            left_dec[fL[t]].append((s, t))
            right_dec[fR[t]].append((s, t))

    checks = {"decomposition_independent": True}
    images = []
    for m in HS.elements:
        L, R = m.L, m.R
        newL, newR = [], []
        for u in range(n):
            vals = {pairs[L[s]][0][t] for s, t in left_dec[u]}
            s, t = left_dec[u][0]
            newL.append(pairs[L[s]][0][t])
            if len(vals) != 1:
                checks["decomposition_independent"] = False
            vals = {pairs[R[s]][1][t] for s, t in right_dec[u]}
            s, t = right_dec[u][0]
            newR.append(pairs[R[s]][1][t])
            if len(vals) != 1:
                checks["decomposition_independent"] = False
        images.append((tuple(newL), tuple(newR)))

    checks["images_are_multipliers"] = all(p in HT.index for p in images)
    if not checks["images_are_multipliers"] or not checks["decomposition_independent"]:
        raise InternalVerificationFailed(f"extension construction failed its checks: {checks}")
    mp = tuple(HT.index[p] for p in images)
    sharp = _hull_hom(HS, HT, mp)
    checks["monoid_hom"] = sharp.is_valid()
    can = HS.canonical_indices()
    checks["restricts_to_f"] = all(mp[can[s]] == f[s] for s in range(S.n))
    checks["translation_nondegenerate"] = is_translation_nondegenerate(images, n).ok
    if not all(checks.values()):
        raise InternalVerificationFailed(f"extension failed verification: {checks}")

    res = ExtensionResult(mp, checks, uniqueness_checked=False)
    if len(HS) <= max_hull:
        sols = list(enumerate_monoid_homs(HS.star_table, HS.identity_index, HT.star_table,
                                          HT.identity_index, _fixed_from(can, f)))
        res.uniqueness_checked = True
        res.solutions_found = len(sols)
        if sols != [mp]:
            raise InternalVerificationFailed(f"exhaustive search found {len(sols)} extensions")
    else:
        res.note = f"uniqueness search skipped: hull has {len(HS)} elements > {max_hull}"
    return res


def _fixed_from(can: Sequence[int], f: Sequence[int]) -> List[Tuple[int, int]]:
    return list(zip(can, f))


def trhull_on_morphism(S: FiniteSemigroup, T: FiniteSemigroup, f: Sequence[int],
                       HS=None, HT=None, max_hull: int = DEFAULT_MAX_HULL) -> ExtensionResult:
    """``TrHull(f) = (M_T o f)#`` for a non-degenerate homomorphism ``f: S -> T``."""
    _require_sem_nd(S, "S")
    _require_sem_nd(T, "T")
    bad = hom_violation(S, T, f)
    if bad is not None:
        raise PreconditionFailed("f is not a semigroup homomorphism", bad)
    nd = is_nondegenerate_map(f, T)
    if not nd.ok:
        raise PreconditionFailed("f is not non-degenerate", nd.left_missing if not nd.left_ok else nd.right_missing)
    HS = HS or hull(S)
    HT = HT or hull(T)
    canT = HT.canonical_indices()
    res = extend_sharp(S, T, [canT[v] for v in f], HS, HT, max_hull)
    canS = HS.canonical_indices()
    res.checks["square_commutes"] = all(res.map[canS[s]] == canT[f[s]] for s in range(S.n))
    if not res.checks["square_commutes"]:
        raise InternalVerificationFailed("TrHull(f) square does not commute")
    return res


def monoid_iso_to_hull(M: FiniteMonoid, HM: Optional[TranslationalHull] = None):
    """Indices of the canonical map ``M -> hull(|M|)`` and its inverse table."""
    HM = HM or hull(M.sg)
    can = HM.canonical_indices()
    if len(set(can)) != M.n or len(HM) != M.n:
        raise InternalVerificationFailed("canonical map of a monoid is not bijective onto its hull")
    inv = [0] * M.n
    for x, c in enumerate(can):
        inv[c] = x
    return HM, can, tuple(inv)


def extend_flat(S: FiniteSemigroup, M: FiniteMonoid, f: Sequence[int], HS=None,
                max_hull: int = DEFAULT_MAX_HULL) -> ExtensionResult:
    """The unique monoid hom ``hull(S) -> M`` restricting to ``f``."""
    _require_sem_nd(S, "S")
    bad = hom_violation(S, M.sg, f)
    if bad is not None:
        raise PreconditionFailed("f is not a semigroup homomorphism into |M|", bad)
    nd = is_nondegenerate_map(f, M.sg)
    if not nd.ok:
        raise PreconditionFailed("f is not non-degenerate", nd.left_missing if not nd.left_ok else nd.right_missing)
    HS = HS or hull(S)
    HM, canM, inv = monoid_iso_to_hull(M)
    sharp = extend_sharp(S, M.sg, [canM[v] for v in f], HS, HM, max_hull=0)
    mp = tuple(inv[v] for v in sharp.map)
    Mtab, Me = _monoid_arrays(M)
    checks = dict(sharp.checks)
    checks["monoid_hom"] = MonoidHom(HS.star_table, HS.identity_index, Mtab, Me, mp).is_valid()
    canS = HS.canonical_indices()
    checks["restricts_to_f"] = all(mp[canS[s]] == f[s] for s in range(S.n))
    if not all(checks.values()):
        raise InternalVerificationFailed(f"flat extension failed verification: {checks}")
    res = ExtensionResult(mp, checks, uniqueness_checked=False)
    if len(HS) <= max_hull:
        sols = list(enumerate_monoid_homs(HS.star_table, HS.identity_index, Mtab, Me,
                                          _fixed_from(canS, f)))
        res.uniqueness_checked = True
        res.solutions_found = len(sols)
        if sols != [mp]:
            raise InternalVerificationFailed(f"exhaustive search found {len(sols)} flat extensions")
    else:
        res.note = f"uniqueness search skipped: hull has {len(HS)} elements > {max_hull}"
    return res


def bullet_compose(S: FiniteSemigroup, T: FiniteSemigroup, U: FiniteSemigroup,
                   g: Sequence[int], f: Sequence[int], HT=None, HU=None) -> Tuple[int, ...]:
    """``g . f = |g#| o f`` for ``f: S -> |hull(T)|`` and ``g: T -> |hull(U)|``."""
    HT = HT or hull(T)
    HU = HU or hull(U)
    _require_nondegenerate(T, "T")
    _require_nondegenerate(U, "U")
    if _first_bad_hom_pair(S, HT.star_table, f) is not None:
        raise PreconditionFailed("f is not a homomorphism into the hull of T",
                                 _first_bad_hom_pair(S, HT.star_table, f))
    _require_translation_nondeg([HT.elements[v].pair for v in f], T.n, "f")
    sharp = extend_sharp(T, U, g, HT, HU, max_hull=0)
    out = tuple(sharp.map[v] for v in f)
    if not is_translation_nondegenerate([HU.elements[v].pair for v in out], U.n).ok:
        raise InternalVerificationFailed("bullet composite is not translation non-degenerate")
    return out


def semigroup_homs_into(S: FiniteSemigroup, tab: np.ndarray) -> Iterator[Tuple[int, ...]]:
    """All semigroup homs from ``S`` into the magma with table ``tab``, by backtracking."""
    n, k = S.n, len(tab)
    t = S.table
    dt = np.asarray(tab).tolist()
    img = [0] * n
    # each law f(xy) = f(x)f(y) is checked once its last ingredient is assigned
    due: List[List[Tuple[int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            z = t[x][y]
            due[max(x, y, z)].append((x, y, z))

    def go(i: int):
        if i == n:
            yield tuple(img)
            return
        for v in range(k):
            img[i] = v
            if all(img[z] == dt[img[x]][img[y]] for x, y, z in due[i]):
                yield from go(i + 1)

    yield from go(0)


@dataclass
class AdjunctionReport:
    monoid_homs: int
    candidates: int
    matches_per_hom: List[int]
    phi_targets: List[Optional[int]]
    failures: List[str]

    @property
    def bijective(self) -> bool:
        return (not self.failures and all(c == 1 for c in self.matches_per_hom)
                and self.candidates == self.monoid_homs)

    def to_dict(self) -> dict:
        return {
            "monoid_homs": self.monoid_homs,
            "candidates": self.candidates,
            "matches_per_hom": self.matches_per_hom,
            "bijective": self.bijective,
            "failures": self.failures,
        }


def check_adjunction(M: FiniteMonoid, S: FiniteSemigroup, HS=None) -> AdjunctionReport:
    """Compare monoid homs ``M -> hull(S)`` with translation non-degenerate homs ``|M| -> |hull(S)|``.

    Each candidate ``phi`` is sent to ``phi# o M_M``; the report records how
    many candidates land on each monoid hom.
    """
    _require_sem_nd(S, "S")
    HS = HS or hull(S)
    Mtab, Me = _monoid_arrays(M)
    homs = list(enumerate_monoid_homs(Mtab, Me, HS.star_table, HS.identity_index))
    hom_index = {h: i for i, h in enumerate(homs)}
    HM, canM, _ = monoid_iso_to_hull(M)
    failures: List[str] = []
    candidates = []
    for phi in semigroup_homs_into(M.sg, HS.star_table):
        pairs = [HS.elements[v].pair for v in phi]
        if is_translation_nondegenerate(pairs, S.n).ok:
            candidates.append(phi)
    counts = [0] * len(homs)
    targets: List[Optional[int]] = []
    for phi in candidates:
        sharp = extend_sharp(M.sg, S, phi, HM, HS, max_hull=0)
        image = tuple(sharp.map[canM[x]] for x in range(M.n))
        j = hom_index.get(image)
        targets.append(j)
        if j is None:
            failures.append(f"phi={phi} gives {image}, not a monoid hom")
        else:
            counts[j] += 1
    return AdjunctionReport(len(homs), len(candidates), counts, targets, failures)


def canonical_map_degeneracy(S: FiniteSemigroup, HS=None) -> Optional[dict]:
    """Witness that ``M_S: S -> |hull(S)|`` is not a non-degenerate map, if it is not.

    ``M_S(s) * (L, R) = M_S(R(s))``, so the products ``M_S(s) * h`` never
    leave the inner multipliers; any outer multiplier is missed.
    """
    HS = HS or hull(S)
    can = HS.canonical_indices()
    rep = is_nondegenerate_map(can, HS.monoid_table())
    if rep.ok:
        return None
    miss = rep.left_missing if not rep.left_ok else rep.right_missing
    m = HS.elements[miss]
    return {"missing_hull_index": miss, "L": list(m.L), "R": list(m.R),
            "inner": m.is_inner, "side": "left" if not rep.left_ok else "right"}


# --- the linear setting ----------------------------------------------------------

@dataclass
class LinearSetting:
    """Everything about one algebra that the linear extension needs, computed once."""

    alg: "object"
    mult: "object"
    conv: FiniteSemigroup
    hull: Optional[TranslationalHull]
    conc: Tuple[int, ...]
    canonical: Tuple[int, ...]
    vec_maps: List[Tuple[Tuple[int, ...], Tuple[int, ...]]]

    @classmethod
    def of(cls, A, with_hull: bool = True) -> "LinearSetting":
        from .linear import conc_pair, convolution_semigroup, inner_multiplier, multiplier_monoid

        M = multiplier_monoid(A)
        conv = convolution_semigroup(A)
        maps = [conc_pair(A, h) for h in M.elements]
        H = hull(conv, verify=False) if with_hull else None
        conc = tuple(H.index[m] for m in maps) if H is not None else ()
        can = tuple(M.index[inner_multiplier(A, v)] for v in A.vectors)
        return cls(A, M, conv, H, conc, can, maps)


def multiplier_nondegenerate(f: Sequence[int], B: "LinearSetting"):
    """``{f_L(x) s} = {f_R(x) s} = all vectors of B``, via the induced set maps."""
    return is_translation_nondegenerate([B.vec_maps[v] for v in f], B.conv.n)


def extend_multiplier(A: "LinearSetting", B: "LinearSetting", f: Sequence[int],
                      check_naturality: bool = True) -> ExtensionResult:
    """The unique monoid hom ``Mult(A) -> Mult(B)`` with ``f^M(L_a, R_a) = f(a)``.

    ``f[a]`` is the index in ``Mult(B)`` of the image of the ``a``-th vector of
    ``A``. On vectors, ``f^M(L, R)`` sends ``u = f_L(s) t`` to ``f_L(Ls) t``
    and ``u = f_R(s) t`` to ``f_R(Rs) t``; concreteness of ``B`` turns that
    pair of set maps back into a pair of matrices.
    """
    from .linear import concretization

    f = tuple(int(v) for v in f)
    MA, MB = A.mult, B.mult
    if len(f) != A.conv.n or any(not 0 <= v < len(MB) for v in f):
        raise PreconditionFailed("f must list one Mult(B) index per vector of A", f)
    rep = degeneracy_report(B.conv)
    if not rep.nondegenerate:
        side = "left_nondeg" if not rep.left_nondeg else "right_nondeg"
        raise PreconditionFailed("convolution semigroup of B is degenerate", rep.witnesses[side])
    if B.hull is None or not concretization(B.alg, MB, B.hull).concrete:
        raise PreconditionFailed("B is not concrete")
    bad = _first_bad_hom_pair(A.conv, MB.star_table, f)
    if bad is not None:
        raise PreconditionFailed("f is not a homomorphism Conv(A) -> Mult(B)", bad)
    nd = multiplier_nondegenerate(f, B)
    if not nd.ok:
        raise PreconditionFailed("f is not multiplier non-degenerate",
                                 nd.left_missing if not nd.left_ok else nd.right_missing)

    nB = B.conv.n
    fmaps = [B.vec_maps[v] for v in f]
    left_dec: List[List[Tuple[int, int]]] = [[] for _ in range(nB)]
    right_dec: List[List[Tuple[int, int]]] = [[] for _ in range(nB)]
    for s in range(A.conv.n):
        for t in range(nB):
            left_dec[fmaps[s][0][t]].append((s, t))
            right_dec[fmaps[s][1][t]].append((s, t))

    conc_index = {m: i for i, m in enumerate(B.vec_maps)}
    checks = {"decomposition_independent": True}
    images = []
    for h, (Lv, Rv) in zip(MA.elements, A.vec_maps):
        G, D = [], []
        for u in range(nB):
            vals = {fmaps[Lv[s]][0][t] for s, t in left_dec[u]}
            checks["decomposition_independent"] &= len(vals) == 1
            s, t = left_dec[u][0]
            G.append(fmaps[Lv[s]][0][t])
            vals = {fmaps[Rv[s]][1][t] for s, t in right_dec[u]}
            checks["decomposition_independent"] &= len(vals) == 1
            s, t = right_dec[u][0]
            D.append(fmaps[Rv[s]][1][t])
        images.append(conc_index.get((tuple(G), tuple(D))))
    checks["lifts_through_concretization"] = None not in images
    if not all(checks.values()):
        raise InternalVerificationFailed(f"linear extension construction failed: {checks}")
    mp = tuple(images)
    checks["monoid_hom"] = MonoidHom(MA.star_table, MA.identity_index, MB.star_table,
                                     MB.identity_index, mp).is_valid()
    checks["restricts_to_f"] = all(mp[A.canonical[a]] == f[a] for a in range(A.conv.n))
    if check_naturality:
        checks["conc_naturality"] = _conc_naturality(A, B, f, mp)
    if not all(checks.values()):
        raise InternalVerificationFailed(f"linear extension failed verification: {checks}")

    cands = _restriction_candidates(A, B, f)
    sols = list(enumerate_monoid_homs(MA.star_table, MA.identity_index, MB.star_table,
                                      MB.identity_index, _fixed_from(A.canonical, f), cands))
    if sols != [mp]:
        raise InternalVerificationFailed(f"exhaustive search found {len(sols)} linear extensions")
    return ExtensionResult(mp, checks, uniqueness_checked=True, solutions_found=len(sols))


def _restriction_candidates(A: "LinearSetting", B: "LinearSetting", f: Sequence[int]) -> List[List[int]]:
    """Values ``g(h)`` can take in any monoid hom ``g`` restricting to ``f``.

    ``h * M(a) = M(L a)`` and ``M(a) * h = M(R a)``, so ``g(h) * f(a) = f(L a)``
    and ``f(a) * g(h) = f(R a)`` for every vector ``a``.
    """
    MB = B.mult
    tabB = MB.star_table
    fa = np.asarray(f)
    out = []
    for Lv, Rv in A.vec_maps:
        fL = fa[list(Lv)]
        fR = fa[list(Rv)]
        ok = (tabB[:, fa] == fL[None, :]).all(axis=1) & (tabB[fa, :] == fR[:, None]).all(axis=0)
        out.append([int(y) for y in np.nonzero(ok)[0]])
    return out


def _conc_naturality(A: "LinearSetting", B: "LinearSetting", f: Sequence[int], fM: Sequence[int]) -> bool:
    """``(|Conc_B| o f)# o Conc_A = Conc_B o f^M``"""
    g = [B.conc[v] for v in f]
    sharp = extend_sharp(A.conv, B.conv, g, A.hull, B.hull, max_hull=0)
    return all(sharp.map[A.conc[h]] == B.conc[fM[h]] for h in range(len(A.mult)))
