"""Property suites over the semigroup census and the algebra fleet.

A check is a predicate over JSON-serializable instances. In ``all`` mode the
first instance where the predicate fails is the witness; in ``exists`` mode
(demonstrations of a counterexample) the first instance where it holds is.
Re-running the predicate on a witness parsed back from a report reproduces
the verdict.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterable, Iterator, List, Optional

from .census import (
    census_stream,
    enumerate_semigroups,
    enumerate_semigroups_colmajor,
    naive_count,
)
from .coalgebra import (
    FpCoalgebra,
    coalgebra_from_dict,
    dual_algebra,
    dual_convolution,
    duality_report,
    inner_comultiplier_checks,
)
from .coalgebra import inner_hom_law_holds as co_inner_hom_law_holds
from .degeneracy import degeneracy_report, injectivity_checks, is_nondegenerate_map
from .errors import AlgebraError, InternalVerificationFailed, SemigroupError
from .extension import (
    LinearSetting,
    canonical_map_degeneracy,
    check_adjunction,
    extend_flat,
    extend_multiplier,
    extend_sharp,
    monoid_iso_to_hull,
    multiplier_nondegenerate,
    semigroup_homs_into,
    trhull_on_morphism,
    bullet_compose,
)
from .gfp import verify_nullspace
from .hull import hull, left_translations, naive_hull
from .linear import (
    FpAlgebra,
    algebra_from_dict,
    canonical_map_injectivity,
    concretization,
    convolution_semigroup,
    find_unit,
    inner_hom_law_holds,
    is_faithful,
    multiplier_monoid,
    multiplier_space,
    naive_multiplier_pairs,
    parse_alg_json,
)
from .semigroup import FiniteMonoid, FiniteSemigroup, as_monoid, compose

SCOPES = ("set", "linear", "all")
NAIVE_PAIR_LIMIT = 1 << 16
BULLET_CHAIN_ARROWS = 2


class NoInputs(OSError):
    """The fleet directory holds no ``.alg`` files."""


@dataclass
class Context:
    max_order: int = 3
    sample_every: Optional[int] = 25
    seed: int = 0
    max_hull: Optional[int] = 64
    algebras: List[dict] = field(default_factory=list)
    coalgebras: List[dict] = field(default_factory=list)

    def params(self) -> dict:
        return {"max_order": self.max_order, "sample_every": self.sample_every,
                "seed": self.seed, "max_hull": self.max_hull}


@dataclass(frozen=True)
class Check:
    id: str
    scope: str
    instances: Callable[[Context], Iterable[dict]]
    holds: Callable[[dict], bool]
    mode: str = "all"


@dataclass
class CheckResult:
    statement: str
    passed: bool
    instances: int
    witness: Optional[dict]
    mode: str
    seconds: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {"statement": self.statement, "status": "pass" if self.passed else "fail",
                "mode": self.mode, "instances": self.instances, "witness": self.witness,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


# --- caches keyed on hashable tables ------------------------------------------

def _key(table) -> tuple:
    return tuple(tuple(int(v) for v in r) for r in table)


@lru_cache(maxsize=4096)
def _sg(table: tuple) -> FiniteSemigroup:
    return FiniteSemigroup(table)


@lru_cache(maxsize=4096)
def _hull(table: tuple):
    return hull(_sg(table))


def sg_of(inst: dict, key: str = "S") -> FiniteSemigroup:
    return _sg(_key(inst[key]))


def hull_of(inst: dict, key: str = "S"):
    return _hull(_key(inst[key]))


@lru_cache(maxsize=256)
def _setting(text: str) -> LinearSetting:
    return LinearSetting.of(algebra_from_dict(json.loads(text)))


def setting_of(alg: dict) -> LinearSetting:
    return _setting(json.dumps(alg, sort_keys=True))


def _members(ctx: Context, cap: int = 3, reduce_iso: bool = False) -> Iterator[FiniteSemigroup]:
    for n in range(1, min(ctx.max_order, cap) + 1):
        yield from enumerate_semigroups(n, reduce_iso)


def _sampled(ctx: Context) -> Iterator[FiniteSemigroup]:
    return census_stream(ctx.max_order, ctx.sample_every, ctx.seed)


def _table(S: FiniteSemigroup) -> list:
    return [list(r) for r in S.table]


def _sem_nd(S: FiniteSemigroup) -> bool:
    return degeneracy_report(S).in_sem_nd


# --- set-level statements ----------------------------------------------------

def _hull_naive(inst) -> bool:
    H = hull_of(inst)
    elems, table = naive_hull(sg_of(inst))
    return [m.pair for m in H.elements] == list(elems) and H.star_table.tolist() == [list(r) for r in table]


def _hull_monoid_laws(inst) -> bool:
    S, H = sg_of(inst), hull_of(inst)
    H.verify()
    can = H.canonical_indices()
    tab = H.star_table
    if any(can[S.mul(x, y)] != tab[can[x], can[y]] for x in range(S.n) for y in range(S.n)):
        return False
    for h in range(len(H)):
        L, R = H.elements[h].pair
        for s in range(S.n):
            if tab[h, can[s]] != can[L[s]] or tab[can[s], h] != can[R[s]]:
                return False
    return True


def _monoid_iso(inst) -> bool:
    S = sg_of(inst)
    M = as_monoid(S)
    H = hull_of(inst)
    _, can, _ = monoid_iso_to_hull(M, H)
    tab = H.star_table
    return can[M.e] == H.identity_index and all(
        can[S.mul(x, y)] == tab[can[x], can[y]] for x in range(S.n) for y in range(S.n))


def _diagonal(inst) -> bool:
    S, H = sg_of(inst), hull_of(inst)
    lefts = left_translations(S)
    return (all(m.is_diagonal for m in H.elements)
            and sorted(m.L for m in H.elements) == sorted(lefts) and len(H) == len(lefts))


def _injectivity(inst) -> bool:
    return injectivity_checks(sg_of(inst)).consistent


def _literal_pairing_refuted(inst) -> bool:
    return not injectivity_checks(sg_of(inst)).crossed_pairing_holds


def _sharp_instances(ctx: Context) -> Iterator[dict]:
    members = list(_members(ctx))
    for T in members:
        if not degeneracy_report(T).nondegenerate:
            continue
        HT = _hull(T.table)
        for S in members:
            for f in semigroup_homs_into(S, HT.star_table):
                if is_translation_nondeg_f(HT, f, T.n):
                    yield {"S": _table(S), "T": _table(T), "f": list(f), "max_hull": ctx.max_hull}


def is_translation_nondeg_f(HT, f, n: int) -> bool:
    from .degeneracy import is_translation_nondegenerate

    return is_translation_nondegenerate([HT.elements[v].pair for v in f], n).ok


def _sharp(inst) -> bool:
    bound = inst.get("max_hull")
    bound = 10 ** 9 if bound is None else bound
    r = extend_sharp(sg_of(inst), sg_of(inst, "T"), inst["f"], hull_of(inst), hull_of(inst, "T"), bound)
    return all(r.checks.values()) and (not r.uniqueness_checked or r.solutions_found == 1)


def _nondeg_homs(S: FiniteSemigroup, T: FiniteSemigroup) -> Iterator[tuple]:
    for f in semigroup_homs_into(S, T.array):
        if is_nondegenerate_map(f, T).ok:
            yield f


def _functor_instances(ctx: Context) -> Iterator[dict]:
    nd = [S for S in _members(ctx, reduce_iso=True) if _sem_nd(S)]
    for S in nd:
        yield {"S": _table(S)}
        for T in nd:
            for f in _nondeg_homs(S, T):
                for U in nd:
                    for g in _nondeg_homs(T, U):
                        yield {"S": _table(S), "T": _table(T), "U": _table(U), "f": list(f), "g": list(g)}


def _functor(inst) -> bool:
    S, HS = sg_of(inst), hull_of(inst)
    if "T" not in inst:
        r = trhull_on_morphism(S, S, list(range(S.n)), HS, HS)
        return list(r.map) == list(range(len(HS)))
    T, U = sg_of(inst, "T"), sg_of(inst, "U")
    HT, HU = hull_of(inst, "T"), hull_of(inst, "U")
    f, g = inst["f"], inst["g"]
    tf = trhull_on_morphism(S, T, f, HS, HT).map
    tg = trhull_on_morphism(T, U, g, HT, HU).map
    tgf = trhull_on_morphism(S, U, compose(g, f), HS, HU).map
    return list(tgf) == [tg[v] for v in tf]


def _flat_instances(ctx: Context) -> Iterator[dict]:
    members = list(_members(ctx))
    nd = [S for S in members if _sem_nd(S)]
    monoids = [as_monoid(S) for S in members if as_monoid(S) is not None]
    for S in nd:
        for M in monoids:
            for f in _nondeg_homs(S, M.sg):
                yield {"S": _table(S), "M": _table(M.sg), "e": M.e, "f": list(f),
                       "max_hull": ctx.max_hull}


def _flat(inst) -> bool:
    bound = inst.get("max_hull")
    bound = 10 ** 9 if bound is None else bound
    M = FiniteMonoid(sg_of(inst, "M"), inst["e"])
    r = extend_flat(sg_of(inst), M, inst["f"], hull_of(inst), bound)
    return all(r.checks.values()) and (not r.uniqueness_checked or r.solutions_found == 1)


def _bullet_instances(ctx: Context) -> Iterator[dict]:
    # nondegenerate members, iso-reduced; translation non-degenerate homs into hulls
    nd = [S for S in _members(ctx, reduce_iso=True) if degeneracy_report(S).nondegenerate]
    arrows: Dict[tuple, List[tuple]] = {}
    for S in nd:
        for T in nd:
            HT = _hull(T.table)
            arrows[(S.table, T.table)] = [f for f in semigroup_homs_into(S, HT.star_table)
                                          if is_translation_nondeg_f(HT, f, T.n)]
    for S in nd:
        for T in nd:
            for f in arrows[(S.table, T.table)]:
                yield {"S": _table(S), "T": _table(T), "f": list(f)}
    # associativity on chains S -> T -> U -> V built from the first few arrows of each hom-set
    for S in nd:
        for T in nd:
            for f in arrows[(S.table, T.table)][:BULLET_CHAIN_ARROWS]:
                for U in nd:
                    for g in arrows[(T.table, U.table)][:BULLET_CHAIN_ARROWS]:
                        for V in nd:
                            for h in arrows[(U.table, V.table)][:BULLET_CHAIN_ARROWS]:
                                yield {"S": _table(S), "T": _table(T), "U": _table(U), "V": _table(V),
                                       "f": list(f), "g": list(g), "h": list(h)}


def _bullet(inst) -> bool:
    S, T = sg_of(inst), sg_of(inst, "T")
    HS, HT = hull_of(inst), hull_of(inst, "T")
    f = tuple(inst["f"])
    if "U" not in inst:
        canT, canS = HT.canonical_indices(), HS.canonical_indices()
        left = bullet_compose(S, T, T, canT, f, HT, HT)
        right = bullet_compose(S, S, T, f, canS, HS, HT)
        return left == f and right == f
    U, V = sg_of(inst, "U"), sg_of(inst, "V")
    HU, HV = hull_of(inst, "U"), hull_of(inst, "V")
    g, h = inst["g"], inst["h"]
    a = bullet_compose(S, U, V, h, bullet_compose(S, T, U, g, f, HT, HU), HU, HV)
    b = bullet_compose(S, T, V, bullet_compose(T, U, V, h, g, HU, HV), f, HT, HV)
    return a == b


def _adjunction_instances(ctx: Context) -> Iterator[dict]:
    members = list(_members(ctx))
    for M in (as_monoid(S) for S in members):
        if M is None:
            continue
        for S in members:
            if _sem_nd(S):
                yield {"M": _table(M.sg), "e": M.e, "S": _table(S)}


def _adjunction(inst) -> bool:
    M = FiniteMonoid(sg_of(inst, "M"), inst["e"])
    return check_adjunction(M, sg_of(inst), hull_of(inst)).bijective


def _not_a_unit(inst) -> bool:
    w = canonical_map_degeneracy(sg_of(inst), hull_of(inst))
    return w is not None and not w["inner"]


def _count_instances(ctx: Context) -> Iterator[dict]:
    for n in range(1, ctx.max_order + 1):
        yield {"order": n}


def _counts(inst) -> bool:
    n = inst["order"]
    rows = sum(1 for _ in enumerate_semigroups(n))
    other = naive_count(n) if n <= 3 else sum(1 for _ in enumerate_semigroups_colmajor(n))
    return rows == other


# --- linear statements -------------------------------------------------------

def _alg(inst) -> FpAlgebra:
    return algebra_from_dict(inst["alg"])


def _coalg(inst) -> FpCoalgebra:
    return coalgebra_from_dict(inst["coalg"])


def _algebra_instances(ctx: Context) -> Iterator[dict]:
    for a in ctx.algebras:
        yield {"name": a["name"], "alg": a["data"]}


def _small_algebra_instances(ctx: Context) -> Iterator[dict]:
    for inst in _algebra_instances(ctx):
        A = _alg(inst)
        if A.p ** (2 * A.dim * A.dim) <= NAIVE_PAIR_LIMIT:
            yield inst


def _coalgebra_instances(ctx: Context) -> Iterator[dict]:
    for c in ctx.coalgebras:
        yield {"name": c["name"], "coalg": c["data"]}


def _space_naive(inst) -> bool:
    A = _alg(inst)
    sp = multiplier_space(A)
    return (verify_nullspace(sp.equations, sp.basis, A.p)
            and sorted(sp.pairs) == sorted(naive_multiplier_pairs(A)))


def _linear_monoid(inst) -> bool:
    A = _alg(inst)
    M = multiplier_monoid(A)
    rep = canonical_map_injectivity(A)
    return (inner_hom_law_holds(A, M) and rep.left_identity and rep.right_identity
            and rep.implication_holds)


def _concretization(inst) -> bool:
    A = _alg(inst)
    M = multiplier_monoid(A)
    rep = concretization(A, M)
    if not (rep.monoid_hom and rep.injective):
        return False
    if find_unit(A) is not None:
        inner = set(LinearSetting.of(A, with_hull=False).canonical)
        if not rep.concrete or len(inner) != len(M):
            return False
    if is_faithful(A) and not rep.concrete:
        return False
    return True


def _admissible_target(B: LinearSetting) -> bool:
    return (degeneracy_report(B.conv).nondegenerate
            and concretization(B.alg, B.mult, B.hull).concrete)


def linear_extension_instances(algebras: Iterable[dict]) -> Iterator[dict]:
    """Every ``(A, B, f)`` with ``B`` admissible and ``f`` a multiplier non-degenerate hom."""
    algebras = list(algebras)
    targets = [b for b in algebras if _admissible_target(setting_of(b["data"]))]
    for a in algebras:
        SA = setting_of(a["data"])
        for b in targets:
            SB = setting_of(b["data"])
            for f in semigroup_homs_into(SA.conv, SB.mult.star_table):
                if multiplier_nondegenerate(f, SB).ok:
                    yield {"A": a["data"], "B": b["data"], "f": list(f)}


def _extension_instances(ctx: Context) -> Iterator[dict]:
    small = [a for a in ctx.algebras if a["data"]["p"] == 2 and a["data"]["dim"] <= 2]
    return linear_extension_instances(small)


def _linear_extension(inst) -> bool:
    r = extend_multiplier(setting_of(inst["A"]), setting_of(inst["B"]), inst["f"])
    return all(r.checks.values()) and r.solutions_found == 1 and "conc_naturality" in r.checks


def _duality(inst) -> bool:
    return duality_report(_coalg(inst)).ok


def _plain_transpose_refuted(inst) -> bool:
    return not duality_report(_coalg(inst)).plain_transpose_is_anti


def _inner_comultipliers(inst) -> bool:
    C = _coalg(inst)
    rep = inner_comultiplier_checks(C)
    conv = dual_convolution(C).table == convolution_semigroup(dual_algebra(C)).table
    return (co_inner_hom_law_holds(C) and rep.left_identity and rep.right_identity
            and rep.implication_holds and conv)


CHECKS: List[Check] = [
    Check("hull.backtrack-equals-naive", "set", lambda c: ({"S": _table(S)} for S in _members(c)), _hull_naive),
    Check("hull.monoid-and-canonical-hom", "set", lambda c: ({"S": _table(S)} for S in _members(c)),
          _hull_monoid_laws),
    Check("hull.monoid-canonical-iso", "set",
          lambda c: ({"S": _table(S)} for S in _sampled(c) if as_monoid(S) is not None), _monoid_iso),
    Check("hull.commutative-idempotent-diagonal", "set",
          lambda c: ({"S": _table(S)} for S in _sampled(c)
                     if S.is_commutative() and degeneracy_report(S).globally_idempotent), _diagonal),
    Check("degeneracy.side-injectivity", "set", lambda c: ({"S": _table(S)} for S in _sampled(c)), _injectivity),
    Check("degeneracy.literal-side-pairing-refuted", "set",
          lambda c: ({"S": _table(S)} for S in _members(c)), _literal_pairing_refuted, mode="exists"),
    Check("extension.sharp-exists-unique", "set", _sharp_instances, _sharp),
    Check("extension.trhull-functor", "set", _functor_instances, _functor),
    Check("extension.flat-exists-unique", "set", _flat_instances, _flat),
    Check("extension.bullet-category", "set", _bullet_instances, _bullet),
    Check("extension.adjunction-bijection", "set", _adjunction_instances, _adjunction),
    Check("extension.canonical-map-not-a-unit", "set",
          lambda c: ({"S": _table(S)} for S in _members(c) if _sem_nd(S)), _not_a_unit, mode="exists"),
    Check("census.labeled-counts", "set", _count_instances, _counts),
    Check("linear.space-equals-naive", "linear", _small_algebra_instances, _space_naive),
    Check("linear.monoid-and-inner-hom", "linear", _algebra_instances, _linear_monoid),
    Check("linear.concretization", "linear", _algebra_instances, _concretization),
    Check("linear.multiplier-extension", "linear", _extension_instances, _linear_extension),
    Check("coalgebra.transpose-duality", "linear", _coalgebra_instances, _duality),
    Check("coalgebra.plain-transpose-not-anti", "linear", _coalgebra_instances, _plain_transpose_refuted,
          mode="exists"),
    Check("coalgebra.inner-comultipliers", "linear", _coalgebra_instances, _inner_comultipliers),
]

BY_ID = {c.id: c for c in CHECKS}

_EXPECTED_FAILURES = (SemigroupError, AlgebraError, InternalVerificationFailed, ValueError)


def _safe(holds: Callable[[dict], bool], inst: dict):
    try:
        return bool(holds(inst)), ""
    except _EXPECTED_FAILURES as e:
        return False, f"{type(e).__name__}: {e}"


def run_check(check: Check, ctx: Context) -> CheckResult:
    t0 = time.perf_counter()
    n = 0
    for inst in check.instances(ctx):
        n += 1
        ok, err = _safe(check.holds, inst)
        if check.mode == "all" and not ok:
            return CheckResult(check.id, False, n, inst, check.mode, time.perf_counter() - t0, err)
        if check.mode == "exists" and ok:
            return CheckResult(check.id, True, n, inst, check.mode, time.perf_counter() - t0)
    passed = check.mode == "all"
    detail = "" if passed else "no instance demonstrates the counterexample"
    return CheckResult(check.id, passed, n, None, check.mode, time.perf_counter() - t0, detail)


def selected(scope: str) -> List[Check]:
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}")
    return [c for c in CHECKS if scope == "all" or c.scope == scope]


def run_checks(scope: str, ctx: Context, progress: Optional[Callable[[CheckResult], None]] = None) -> List[CheckResult]:
    out = []
    for c in selected(scope):
        r = run_check(c, ctx)
        out.append(r)
        if progress:
            progress(r)
    return out


def recheck(entry: dict, ctx: Optional[Context] = None) -> bool:
    """Re-derive the pass flag of one serialized result from its witness.

    Passing ``all`` checks and failing ``exists`` checks carry no witness;
    their verdict is re-derived by rerunning the check when ``ctx`` is given
    and taken as reported otherwise.
    """
    check = BY_ID[entry["statement"]]
    w = entry.get("witness")
    if w is not None:
        return _safe(check.holds, w)[0]
    if ctx is None:
        return entry["status"] == "pass"
    return run_check(check, ctx).passed


# --- fleet loading -----------------------------------------------------------

def load_fleet(directory) -> Context:
    """Read every ``.alg`` file; files with a ``comul`` key are coalgebras."""
    d = Path(directory)
    if not d.is_dir():
        raise NoInputs(f"{d} is not a directory")
    files = sorted(d.glob("*.alg"))
    if not files:
        raise NoInputs(f"no inputs: {d} contains no .alg files")
    ctx = Context()
    for path in files:
        obj = parse_alg_json(path.read_text())
        if "comul" in obj:
            coalgebra_from_dict(obj)
            ctx.coalgebras.append({"name": path.name, "data": obj})
        else:
            algebra_from_dict(obj)
            data = {k: obj[k] for k in ("p", "dim", "mul", "unit") if k in obj}
            ctx.algebras.append({"name": path.name, "data": data})
    return ctx


def default_fleet_dir() -> Path:
    return Path(__file__).parent / "data" / "fleet"
