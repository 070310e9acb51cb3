"""Finite semigroups as Cayley tables.

Elements are the dense indices ``0..n-1`` and ``table[x][y]`` is ``x*y``.
Self-maps of the carrier are plain tuples ``img`` with ``img[x]`` the image
of ``x``; they are used everywhere a translation is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .errors import NotAssociative, OutOfRangeEntry, SemigroupError, SgpParseError, ShapeError

SelfMap = Tuple[int, ...]


def first_nonassociative_triple(table) -> Optional[Tuple[int, int, int]]:
    """Lexicographically first ``(x, y, z)`` with ``(xy)z != x(yz)``, or None."""
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0] if t.ndim == 2 else 0
    if n == 0:
        return None
    lhs = t[t]  # lhs[x, y, z] = t[t[x, y], z]
    rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return None
    x, y, z = bad[0]
    return int(x), int(y), int(z)


@dataclass(frozen=True)
class FiniteSemigroup:
    """A finite semigroup given by its Cayley table.

    Construct through :func:`validate_semigroup` for untrusted input; the
    dataclass constructor itself only normalizes the table to tuples.
    """

    table: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(int(v) for v in row) for row in self.table))

    @property
    def n(self) -> int:
        return len(self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def __len__(self) -> int:
        return len(self.table)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64).reshape(self.n, self.n)

    def is_commutative(self) -> bool:
        return all(self.table[x][y] == self.table[y][x] for x in range(self.n) for y in range(x))

    def __repr__(self) -> str:
        return f"FiniteSemigroup({[list(r) for r in self.table]})"


@dataclass(frozen=True)
class FiniteMonoid:
    sg: FiniteSemigroup
    e: int

    def __post_init__(self):
        n = self.sg.n
        if not 0 <= self.e < n:
            raise SemigroupError(f"identity index {self.e} out of range")
        t = self.sg.table
        for x in range(n):
            if t[self.e][x] != x or t[x][self.e] != x:
                raise SemigroupError(f"{self.e} is not a two-sided identity (fails at {x})")

    @property
    def n(self) -> int:
        return self.sg.n

    @property
    def table(self):
        return self.sg.table


@dataclass(frozen=True)
class SemigroupHom:
    src: FiniteSemigroup
    dst: FiniteSemigroup
    map: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        bad = hom_violation(self.src, self.dst, self.map)
        if bad is not None:
            raise SemigroupError(f"not a semigroup homomorphism: fails at {bad}")

    def __call__(self, x: int) -> int:
        return self.map[x]


def hom_violation(src: FiniteSemigroup, dst: FiniteSemigroup, f: Sequence[int]):
    """First pair ``(x, y)`` with ``f(xy) != f(x)f(y)``; ``None`` for a homomorphism."""
    if len(f) != src.n:
        return ("length", len(f))
    for v in f:
        if not 0 <= v < dst.n:
            return ("range", v)
    st, dt = src.table, dst.table
    for x in range(src.n):
        for y in range(src.n):
            if f[st[x][y]] != dt[f[x]][f[y]]:
                return (x, y)
    return None


def is_hom(src: FiniteSemigroup, dst: FiniteSemigroup, f: Sequence[int]) -> bool:
    return hom_violation(src, dst, f) is None


def validate_semigroup(n: int, table: Sequence[Sequence[int]]) -> FiniteSemigroup:
    if n < 0:
        raise ShapeError(f"negative order {n}")
    if len(table) != n or any(len(row) != n for row in table):
        raise ShapeError(f"table is not {n}x{n}")
    for x, row in enumerate(table):
        for y, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                raise OutOfRangeEntry(x, y, v, n)
    triple = first_nonassociative_triple(table)
    if triple is not None:
        raise NotAssociative(*triple)
    return FiniteSemigroup(table)


def find_identity(S: FiniteSemigroup) -> Optional[int]:
    t = S.table
    for e in range(S.n):
        if all(t[e][x] == x == t[x][e] for x in range(S.n)):
            return e
    return None


def as_monoid(S: FiniteSemigroup) -> Optional[FiniteMonoid]:
    e = find_identity(S)
    return None if e is None else FiniteMonoid(S, e)


def opposite(S: FiniteSemigroup) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(zip(*S.table)) if S.n else ())


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup) -> FiniteSemigroup:
    """Component-wise product; the pair ``(s, t)`` is element ``s * T.n + t``."""
    m = T.n
    rows = []
    for s1 in range(S.n):
        for t1 in range(m):
            rows.append(tuple(
                S.table[s1][s2] * m + T.table[t1][t2]
                for s2 in range(S.n) for t2 in range(m)
            ))
    return FiniteSemigroup(rows)


def _check_index(S: FiniteSemigroup, x: int) -> None:
    if not 0 <= x < S.n:
        raise IndexError(f"element {x} out of range for order {S.n}")


def inner_left_translation(S: FiniteSemigroup, x: int) -> SelfMap:
    """``y -> x*y``"""
    _check_index(S, x)
    return S.table[x]


def inner_right_translation(S: FiniteSemigroup, x: int) -> SelfMap:
    """``y -> y*x``"""
    _check_index(S, x)
    return tuple(S.table[y][x] for y in range(S.n))


def canonical_homomorphism(S: FiniteSemigroup) -> Tuple[Tuple[SelfMap, SelfMap], ...]:
    """The pairs ``(L_x, R_x)`` for every element ``x``, in index order."""
    return tuple((inner_left_translation(S, x), inner_right_translation(S, x)) for x in range(S.n))


def compose(f: SelfMap, g: SelfMap) -> SelfMap:
    """``f o g``"""
    return tuple(f[v] for v in g)


def identity_map(n: int) -> SelfMap:
    return tuple(range(n))


def relabel(S: FiniteSemigroup, perm: Sequence[int]) -> FiniteSemigroup:
    """Transport the table along the bijection ``x -> perm[x]``."""
    n = S.n
    inv = [0] * n
    for x, px in enumerate(perm):
        inv[px] = x
    return FiniteSemigroup(
        tuple(tuple(perm[S.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
    )


# --- .sgp text format -------------------------------------------------------

def parse_sgp(text: str) -> FiniteSemigroup:
    """Parse the ``.sgp`` format: order on the first line, then n rows."""
    rows: list = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        values, cols = [], []
        col = 1
        for tok in tokens:
            col = raw.index(tok, col - 1) + 1
            try:
                values.append(int(tok))
            except ValueError:
                raise SgpParseError(f"not an integer: {tok!r}", lineno, col) from None
            cols.append(col)
            col += len(tok)
        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise SgpParseError("first line must be a single non-negative order", lineno)
            n = values[0]
            continue
        if len(rows) == n:
            raise SgpParseError(f"extra row beyond the declared order {n}", lineno)
        if len(values) != n:
            # point at the first surplus entry, or just past the row when entries are missing
            col = cols[n] if len(values) > n else len(raw.rstrip()) + 1
            raise SgpParseError(f"expected {n} entries, found {len(values)}", lineno, col)
        for j, v in enumerate(values):
            if not 0 <= v < n:
                raise SgpParseError(f"entry {v} outside [0, {n})", lineno, cols[j])
        rows.append(values)
    if n is None:
        raise SgpParseError("empty input", 1)
    if len(rows) != n:
        raise SgpParseError(f"expected {n} rows, found {len(rows)}", len(text.splitlines()) + 1)
    return validate_semigroup(n, rows)


def format_sgp(S: FiniteSemigroup, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(str(S.n))
    lines.extend(" ".join(str(v) for v in row) for row in S.table)
    return "\n".join(lines) + "\n"


def read_sgp(path) -> FiniteSemigroup:
    return parse_sgp(Path(path).read_text())


def write_sgp(S: FiniteSemigroup, path, comment: Optional[str] = None) -> None:
    Path(path).write_text(format_sgp(S, comment))


# A few named semigroups used throughout the tests and the CLI.

def trivial() -> FiniteSemigroup:
    return FiniteSemigroup(((0,),))


def cyclic_group(n: int) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(tuple((x + y) % n for y in range(n)) for x in range(n)))


def left_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(tuple(x for _ in range(n)) for x in range(n)))


def right_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(tuple(range(n)) for _ in range(n)))


def null_semigroup(n: int) -> FiniteSemigroup:
    """Every product is the zero element 0."""
    return FiniteSemigroup(tuple(tuple(0 for _ in range(n)) for _ in range(n)))


def chain(n: int) -> FiniteSemigroup:
    """The meet-semilattice ``0 < 1 < ... < n-1`` (``x*y = min(x, y)``)."""
    return FiniteSemigroup(tuple(tuple(min(x, y) for y in range(n)) for x in range(n)))


def v_semilattice() -> FiniteSemigroup:
    """``{a, b, 0}`` as ``0, 1, 2`` under meet with ``a ^ b = 0``."""
    return FiniteSemigroup(((0, 2, 2), (2, 1, 2), (2, 2, 2)))


def empty() -> FiniteSemigroup:
    return FiniteSemigroup(())


def from_rows(rows: Iterable[Iterable[int]]) -> FiniteSemigroup:
    rows = [list(r) for r in rows]
    return validate_semigroup(len(rows), rows)
