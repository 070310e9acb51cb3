"""Exhaustive enumeration of small semigroups and per-instance hull statistics.

Generation streams tables; nothing holds the whole order-4 census in memory.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass
from itertools import permutations, product
from typing import Dict, Iterable, Iterator, List, Optional, TextIO

import numpy as np

from .degeneracy import DegeneracyReport, degeneracy_report
from .errors import OrderTooLarge
from .hull import hull
from .semigroup import FiniteSemigroup, find_identity

MAX_ORDER = 4


def _check_order(n: int) -> None:
    if n < 0 or n > MAX_ORDER:
        raise OrderTooLarge(f"census supports orders 0..{MAX_ORDER}, got {n}")


def enumerate_semigroups(n: int, reduce_iso: bool = False) -> Iterator[FiniteSemigroup]:
    """All associative n x n tables, cells filled row-major, lexicographic order."""
    _check_order(n)
    if n == 0:
        yield FiniteSemigroup(())
        return
    t = [-1] * (n * n)

    def ok_after(x: int, y: int) -> bool:
        # every triple that reads cell (x, y) in one of its four lookups
        xy = t[x * n + y]
        for z in range(n):
            # (x*y)*z = x*(y*z)
            a = t[xy * n + z]
            b = t[y * n + z]
            if a >= 0 and b >= 0:
                c = t[x * n + b]
                if c >= 0 and a != c:
                    return False
        for u in range(n):
            for v in range(n):
                uv = t[u * n + v]
                if uv < 0:
                    continue
                if uv == x:
                    # (u*v)*y = u*(v*y)
                    vy = t[v * n + y]
                    if vy >= 0:
                        r = t[u * n + vy]
                        if r >= 0 and r != xy:
                            return False
                if uv == y:
                    # x*(u*v) = (x*u)*v
                    xu = t[x * n + u]
                    if xu >= 0:
                        r = t[xu * n + v]
                        if r >= 0 and r != xy:
                            return False
            # (u*x)*y = u*(x*y)
            ux = t[u * n + x]
            if ux >= 0:
                lhs = t[ux * n + y]
                rhs = t[u * n + xy]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
        return True

    def go(cell: int) -> Iterator[FiniteSemigroup]:
        if cell == n * n:
            yield FiniteSemigroup(tuple(tuple(t[r * n:(r + 1) * n]) for r in range(n)))
            return
        x, y = divmod(cell, n)
        for v in range(n):
            t[cell] = v
            if ok_after(x, y):
                yield from go(cell + 1)
        t[cell] = -1

    for S in go(0):
        if not reduce_iso or is_canonical(S):
            yield S


def enumerate_semigroups_colmajor(n: int) -> Iterator[FiniteSemigroup]:
    """Second enumerator for cross-checking counts: column-major cells, full partial re-check."""
    _check_order(n)
    if n == 0:
        yield FiniteSemigroup(())
        return
    tab = np.full((n, n), -1, dtype=np.int64)
    cells = [(x, y) for y in range(n) for x in range(n)]

    def consistent() -> bool:
        for x in range(n):
            for y in range(n):
                xy = tab[x, y]
                if xy < 0:
                    continue
                for z in range(n):
                    yz = tab[y, z]
                    if yz < 0:
                        continue
                    lhs, rhs = tab[xy, z], tab[x, yz]
                    if lhs >= 0 and rhs >= 0 and lhs != rhs:
                        return False
        return True

    def go(i: int) -> Iterator[FiniteSemigroup]:
        if i == len(cells):
            yield FiniteSemigroup(tab.tolist())
            return
        x, y = cells[i]
        for v in range(n):
            tab[x, y] = v
            if consistent():
                yield from go(i + 1)
        tab[x, y] = -1

    yield from go(0)


def naive_count(n: int) -> int:
    """Filter all ``n**(n*n)`` binary operations; feasible for n <= 3."""
    if n == 0:
        return 1
    if n > 3:
        raise OrderTooLarge("naive filter is limited to n <= 3")
    T = np.array(list(product(range(n), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)
    k = np.arange(len(T))[:, None, None, None]
    x = np.arange(n)[None, :, None, None]
    y = np.arange(n)[None, None, :, None]
    z = np.arange(n)[None, None, None, :]
    lhs = T[k, T[k, x, y], z]
    rhs = T[k, x, T[k, y, z]]
    return int((lhs == rhs).reshape(len(T), -1).all(axis=1).sum())


def relabel_table(table, perm) -> tuple:
    n = len(table)
    inv = [0] * n
    for a, pa in enumerate(perm):
        inv[pa] = a
    return tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))


def is_canonical(S: FiniteSemigroup) -> bool:
    """True when no relabelling gives a lexicographically smaller table."""
    base = S.table
    return all(relabel_table(base, p) >= base for p in permutations(range(S.n)))


def table_hash(S: FiniteSemigroup) -> str:
    text = ";".join(",".join(str(v) for v in row) for row in S.table)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CensusRecord:
    semigroup: FiniteSemigroup
    degeneracy: DegeneracyReport
    hull_size: int
    inner_count: int
    outer_count: int
    is_monoid: bool

    def row(self) -> Dict[str, object]:
        d = self.degeneracy
        return {
            "hash": table_hash(self.semigroup),
            "order": self.semigroup.n,
            "table": ";".join(",".join(str(v) for v in r) for r in self.semigroup.table),
            "globally_idempotent": int(d.globally_idempotent),
            "left_nondeg": int(d.left_nondeg),
            "right_nondeg": int(d.right_nondeg),
            "is_monoid": int(self.is_monoid),
            "hull_size": self.hull_size,
            "inner": self.inner_count,
            "outer": self.outer_count,
        }


CSV_FIELDS = ["hash", "order", "table", "globally_idempotent", "left_nondeg", "right_nondeg",
              "is_monoid", "hull_size", "inner", "outer"]


def census_record(S: FiniteSemigroup) -> CensusRecord:
    H = hull(S, verify=False)
    return CensusRecord(S, degeneracy_report(S), len(H), H.inner_count, H.outer_count,
                        find_identity(S) is not None)


def sample(stream: Iterable[FiniteSemigroup], every: Optional[int], seed: int = 0) -> Iterator[FiniteSemigroup]:
    """Every ``every``-th item in generation order, starting at offset ``seed % every``."""
    if not every or every <= 1:
        yield from stream
        return
    offset = seed % every
    for i, S in enumerate(stream):
        if i % every == offset:
            yield S


def census_stream(max_order: int, sample_every: Optional[int] = None, seed: int = 0,
                  sample_from: int = 4, reduce_iso: bool = False) -> Iterator[FiniteSemigroup]:
    """Orders ``1..max_order``; orders ``>= sample_from`` are sampled."""
    for n in range(1, max_order + 1):
        gen = enumerate_semigroups(n, reduce_iso)
        yield from (sample(gen, sample_every, seed) if n >= sample_from else gen)


@dataclass
class CensusSummary:
    order: int
    total: int
    globally_idempotent: int
    nondegenerate: int
    monoids: int
    with_outer: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def run_census(n: int, sample_every: Optional[int] = None, seed: int = 0):
    _check_order(n)
    records: List[CensusRecord] = [census_record(S) for S in sample(enumerate_semigroups(n), sample_every, seed)]
    summary = CensusSummary(
        order=n,
        total=len(records),
        globally_idempotent=sum(r.degeneracy.globally_idempotent for r in records),
        nondegenerate=sum(r.degeneracy.nondegenerate for r in records),
        monoids=sum(r.is_monoid for r in records),
        with_outer=sum(r.outer_count > 0 for r in records),
    )
    return records, summary


def write_csv(records: Iterable[CensusRecord], out: TextIO) -> None:
    w = csv.DictWriter(out, fieldnames=CSV_FIELDS)
    w.writeheader()
    for r in records:
        w.writerow(r.row())
