"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""

from __future__ import annotations

import itertools
import subprocess
import sys
import time

import numpy as np
import pytest

from multhull import checks as chk
from multhull.census import enumerate_semigroups, enumerate_semigroups_colmajor, naive_count
from multhull.coalgebra import coalgebra_from_dict, duality_report
from multhull.degeneracy import degeneracy_report, is_translation_nondegenerate
from multhull.errors import AlgebraNotAssociative
from multhull.extension import (
    check_adjunction,
    extend_multiplier,
    extend_sharp,
    monoid_iso_to_hull,
    semigroup_homs_into,
)
from multhull.hull import hull, left_translations, naive_hull, naive_multipliers
from multhull.linear import (
    algebra_from_dict,
    concretization,
    convolution_semigroup,
    find_unit,
    multiplier_space,
    naive_multiplier_pairs,
    validate_algebra,
)
from multhull.semigroup import as_monoid

UNBOUNDED = 10 ** 9


@pytest.fixture
def verdict(capsys):
    def emit(number: int, title: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {number:>2} {'PASS' if ok else 'FAIL'}: {title} -- {detail}")
        assert ok, detail
    return emit


def census(max_order: int):
    for n in range(1, max_order + 1):
        yield from enumerate_semigroups(n)


def gf2_algebras():
    """Every associative GF(2) algebra of dimension 1 or 2, in tensor order."""
    out = []
    for d in (1, 2):
        for bits in itertools.product(range(2), repeat=d ** 3):
            try:
                out.append(validate_algebra(2, d, np.array(bits).reshape(d, d, d)))
            except AlgebraNotAssociative:
                pass
    return out


def test_criterion_01_hull_oracle(verdict):
    t0 = time.perf_counter()
    members = list(census(3))
    bad = []
    for S in members:
        H = hull(S)
        elems, table = naive_hull(S)
        if [m.pair for m in H.elements] != elems or H.star_table.tolist() != table:
            bad.append(S)
    secs = time.perf_counter() - t0
    verdict(1, "backtracking hull equals brute-force hull, order <= 3", not bad and secs < 60,
            f"{len(members) - len(bad)}/{len(members)} agree in {secs:.1f}s (limit 60s)")


def test_criterion_02_monoid_hull_iso(verdict):
    # the full order-4 census, a superset of the sample
    n = fails = 0
    for S in census(4):
        M = as_monoid(S)
        if M is None:
            continue
        n += 1
        H = hull(S)
        _, can, _ = monoid_iso_to_hull(M, H)
        tab = H.star_table
        ok = can[M.e] == H.identity_index and all(
            can[S.mul(x, y)] == tab[can[x], can[y]] for x in range(S.n) for y in range(S.n))
        fails += not ok
    verdict(2, "canonical map of a monoid is an isomorphism onto its hull", fails == 0,
            f"{n} monoids of order <= 4, {fails} failures")


def test_criterion_03_hull_monoid_and_canonical_hom(verdict):
    members = list(census(3))
    fails = 0
    for S in members:
        H = hull(S, verify=False)
        try:
            H.verify()
        except Exception:
            fails += 1
            continue
        can = H.canonical_indices()
        tab = H.star_table
        fails += any(tab[can[x], can[y]] != can[S.mul(x, y)] for x in range(S.n) for y in range(S.n))
    verdict(3, "star tables associative and unital; canonical map is a star-hom", fails == 0,
            f"{len(members)} semigroups of order <= 3, {fails} failures")


def test_criterion_04_commutative_idempotent_diagonal(verdict):
    n = fails = 0
    for S in census(4):
        if not (S.is_commutative() and degeneracy_report(S).globally_idempotent):
            continue
        n += 1
        H = hull(S)
        lefts = left_translations(S)
        ok = all(m.is_diagonal for m in H.elements) and sorted(m.L for m in H.elements) == lefts
        # (L, L) -> L carries the star product to composition
        if ok:
            Ls = [m.L for m in H.elements]
            tab = H.star_table
            ok = all(Ls[tab[a, b]] == tuple(Ls[a][v] for v in Ls[b])
                     for a in range(len(H)) for b in range(len(H)))
        fails += not ok
    verdict(4, "commutative globally idempotent: only diagonal multipliers, (L,L) -> L iso", fails == 0,
            f"{n} members of order <= 4, {fails} failures")


def test_criterion_05_sharp_existence_uniqueness(verdict):
    t0 = time.perf_counter()
    members = list(census(3))
    hulls = {S: hull(S) for S in members}
    n = fails = 0
    for T in members:
        if not degeneracy_report(T).nondegenerate:
            continue
        HT = hulls[T]
        for S in members:
            for f in semigroup_homs_into(S, HT.star_table):
                if not is_translation_nondegenerate([HT.elements[v].pair for v in f], T.n).ok:
                    continue
                n += 1
                try:
                    r = extend_sharp(S, T, f, hulls[S], HT, max_hull=UNBOUNDED)
                    ok = (r.checks["restricts_to_f"] and r.checks["decomposition_independent"]
                          and r.uniqueness_checked and r.solutions_found == 1)
                except Exception:
                    ok = False
                fails += not ok
    secs = time.perf_counter() - t0
    verdict(5, "f# exists, restricts to f, and is the unique extension, |S|,|T| <= 3",
            fails == 0 and n > 0 and secs < 300, f"{n} admissible (S, T, f), {fails} failures, {secs:.1f}s")


def test_criterion_06_adjunction(verdict):
    members = list(census(3))
    hulls = {S: hull(S) for S in members}
    monoids = [as_monoid(S) for S in members if as_monoid(S) is not None]
    targets = [S for S in members if degeneracy_report(S).in_sem_nd]
    n = fails = 0
    for M in monoids:
        for S in targets:
            n += 1
            fails += not check_adjunction(M, S, hulls[S]).bijective
    verdict(6, "hom-set bijection for all (M, S) with |M|, |S| <= 3", fails == 0,
            f"{n} pairs, {fails} failures")


def test_criterion_07_linear_oracle(verdict):
    algs = gf2_algebras()
    fails = sum(sorted(multiplier_space(A).pairs) != sorted(naive_multiplier_pairs(A)) for A in algs)
    verdict(7, "nullspace multiplier space equals brute force, p=2, d <= 2", fails == 0,
            f"{len(algs)} algebras, {len(algs) - fails} agree")


def test_criterion_08_concreteness(verdict, data_dir):
    fleet = data_dir / "fleet"
    z2 = algebra_from_dict(chk.parse_alg_json((fleet / "gf2-zero-1.alg").read_text()))
    z3 = algebra_from_dict(chk.parse_alg_json((fleet / "gf3-zero-1.alg").read_text()))
    r2, r3 = concretization(z2), concretization(z3)
    # oracle: brute-force pair count and brute-force hull of the convolution semigroup
    o2 = (len(naive_multiplier_pairs(z2)), len(naive_multipliers(convolution_semigroup(z2))))
    o3 = (len(naive_multiplier_pairs(z3)), len(naive_multipliers(convolution_semigroup(z3))))
    ok = (r2.concrete and r2.injective and (r2.mult_size, r2.hull_size) == o2 == (4, 4)
          and not r3.concrete and r3.injective and (r3.mult_size, r3.hull_size) == o3 == (9, 81))
    unital = []
    for path in sorted(fleet.glob("*.alg")):
        obj = chk.parse_alg_json(path.read_text())
        if "comul" in obj:
            continue
        A = algebra_from_dict(obj)
        if find_unit(A) is not None:
            unital.append(path.name)
            ok = ok and concretization(A).concrete
    verdict(8, "concreteness: gf2-zero-1 4 <-> 4, gf3-zero-1 9 -> 81 not onto, unital fleet concrete", ok,
            f"{r2.summary()}; {r3.summary()}; unital concrete: {', '.join(unital)}")


def test_criterion_09_duality(verdict, data_dir):
    reports = {}
    for path in sorted((data_dir / "fleet").glob("*.alg")):
        obj = chk.parse_alg_json(path.read_text())
        if "comul" in obj:
            reports[path.name] = duality_report(coalgebra_from_dict(obj))
    fails = [k for k, r in reports.items() if not r.ok]
    plain = sum(not r.plain_transpose_is_anti for r in reports.values())
    verdict(9, "comultiplier monoid vs dual multiplier monoid, table-exact", not fails and reports,
            f"{len(reports)} coalgebras: transpose is an isomorphism onto Mult(C*), (L,R) -> (R^T,L^T) "
            f"an anti-isomorphism onto Mult(C*op); plain transpose not anti on {plain}")


def test_criterion_10_census_counts(verdict):
    small = [(sum(1 for _ in enumerate_semigroups(n)), naive_count(n)) for n in (1, 2, 3)]
    rows = sum(1 for _ in enumerate_semigroups(4))
    cols = sum(1 for _ in enumerate_semigroups_colmajor(4))
    ok = all(a == b for a, b in small) and [a for a, _ in small] == [1, 8, 113] and rows == cols
    verdict(10, "labeled counts vs naive filter; order 4 by two cell orders", ok,
            f"n=1..3: {[a for a, _ in small]} vs naive {[b for _, b in small]}; n=4: {rows} row-major, "
            f"{cols} column-major")


def test_criterion_11_linear_extension(verdict):
    t0 = time.perf_counter()
    algs = [{"name": str(i), "data": A.to_dict()} for i, A in enumerate(gf2_algebras())]
    n = fails = 0
    targets = set()
    for inst in chk.linear_extension_instances(algs):
        n += 1
        targets.add(str(inst["B"]))
        try:
            r = extend_multiplier(chk.setting_of(inst["A"]), chk.setting_of(inst["B"]), inst["f"])
            ok = r.checks.get("conc_naturality") and r.solutions_found == 1 and all(r.checks.values())
        except Exception:
            ok = False
        fails += not ok
    secs = time.perf_counter() - t0
    verdict(11, "f^M exists, is unique, Conc square commutes, p=2, d <= 2", fails == 0 and n > 0,
            f"{n} admissible (A, B, f) over {len(algs)} algebras ({len(targets)} admissible B), "
            f"{fails} failures, {secs:.1f}s")


def test_criterion_12_check_paper_all(verdict):
    t0 = time.perf_counter()
    r = subprocess.run([sys.executable, "-m", "multhull.cli", "check-paper", "--scope", "all"],
                       capture_output=True, text=True, timeout=600)
    secs = time.perf_counter() - t0
    lines = [ln for ln in r.stdout.splitlines() if ln.startswith(("PASS", "FAIL"))]
    verdict(12, "check-paper --scope all on the shipped fleet", r.returncode == 0 and secs < 600,
            f"exit {r.returncode}, {sum(ln.startswith('PASS') for ln in lines)}/{len(lines)} statements, "
            f"{secs:.1f}s (limit 600s)")
