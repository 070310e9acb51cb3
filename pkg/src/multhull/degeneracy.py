"""Global idempotency and non-degeneracy of semigroups and of maps into them.

Every failing property comes with the lexicographically first
counterexample so reports are deterministic and can be re-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from .semigroup import FiniteSemigroup, SelfMap, canonical_homomorphism


@dataclass(frozen=True)
class DegeneracyReport:
    globally_idempotent: bool
    left_nondeg: bool
    right_nondeg: bool
    witnesses: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def nondegenerate(self) -> bool:
        return self.left_nondeg and self.right_nondeg

    @property
    def in_sem_nd(self) -> bool:
        """Globally idempotent and non-degenerate on both sides."""
        return self.globally_idempotent and self.nondegenerate

    def to_dict(self) -> dict:
        return {
            "globally_idempotent": self.globally_idempotent,
            "left_nondeg": self.left_nondeg,
            "right_nondeg": self.right_nondeg,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def _first_missing(n: int, present) -> Optional[int]:
    for u in range(n):
        if u not in present:
            return u
    return None


def product_set(S: FiniteSemigroup) -> set:
    return {v for row in S.table for v in row}


def right_degeneracy_witness(S: FiniteSemigroup) -> Optional[Tuple[int, int]]:
    """First ``y < z`` with ``x*y = x*z`` for every ``x``."""
    t = S.table
    cols = [tuple(t[x][y] for x in range(S.n)) for y in range(S.n)]
    for y in range(S.n):
        for z in range(y + 1, S.n):
            if cols[y] == cols[z]:
                return (y, z)
    return None


def left_degeneracy_witness(S: FiniteSemigroup) -> Optional[Tuple[int, int]]:
    """First ``y < z`` with ``y*x = z*x`` for every ``x``."""
    t = S.table
    for y in range(S.n):
        for z in range(y + 1, S.n):
            if t[y] == t[z]:
                return (y, z)
    return None


def degeneracy_report(S: FiniteSemigroup) -> DegeneracyReport:
    wit: Dict[str, Tuple[int, ...]] = {}
    missing = _first_missing(S.n, product_set(S))
    if missing is not None:
        wit["globally_idempotent"] = (missing,)
    lw = left_degeneracy_witness(S)
    if lw is not None:
        wit["left_nondeg"] = lw
    rw = right_degeneracy_witness(S)
    if rw is not None:
        wit["right_nondeg"] = rw
    return DegeneracyReport(missing is None, lw is None, rw is None, wit)


def recheck_witness(S: FiniteSemigroup, prop: str, witness: Sequence[int]) -> bool:
    """True when ``witness`` really violates ``prop`` on ``S``."""
    t, n = S.table, S.n
    if prop == "globally_idempotent":
        (u,) = witness
        return u not in product_set(S)
    y, z = witness
    if y == z:
        return False
    if prop == "left_nondeg":
        return all(t[y][x] == t[z][x] for x in range(n))
    if prop == "right_nondeg":
        return all(t[x][y] == t[x][z] for x in range(n))
    raise KeyError(prop)


@dataclass(frozen=True)
class SpanReport:
    """Outcome of a two-sided spanning condition; witnesses are first missing elements."""

    left_ok: bool
    right_ok: bool
    left_missing: Optional[int] = None
    right_missing: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.left_ok and self.right_ok

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "left_missing": self.left_missing, "right_missing": self.right_missing}


def _span_report(n: int, left: set, right: set) -> SpanReport:
    lm, rm = _first_missing(n, left), _first_missing(n, right)
    return SpanReport(lm is None, rm is None, lm, rm)


def is_nondegenerate_map(f: Sequence[int], T: FiniteSemigroup) -> SpanReport:
    """``T = {f(s)*t} = {t*f(s)}``"""
    t = T.table
    img = set(f)
    left = {t[a][u] for a in img for u in range(T.n)}
    right = {t[u][a] for a in img for u in range(T.n)}
    return _span_report(T.n, left, right)


def is_translation_nondegenerate(f: Sequence[Tuple[SelfMap, SelfMap]], n: int) -> SpanReport:
    """``f`` lists multiplier pairs ``(f_L(s), f_R(s))`` of an order-``n`` semigroup.

    Checks ``{f_L(s)(t)} = {f_R(s)(t)} = T``.
    """
    left = {L[u] for L, _ in f for u in range(n)}
    right = {R[u] for _, R in f for u in range(n)}
    return _span_report(n, left, right)


def canonical_compose(f: Sequence[int], T: FiniteSemigroup) -> Tuple[Tuple[SelfMap, SelfMap], ...]:
    """The pairs of ``M_T o f``."""
    can = canonical_homomorphism(T)
    return tuple(can[v] for v in f)


@dataclass(frozen=True)
class InjectivityReport:
    left_map_injective: bool
    right_map_injective: bool
    right_nondeg: bool
    left_nondeg: bool
    canonical_injective: bool

    @property
    def consistent(self) -> bool:
        """Right non-degeneracy matches injectivity of ``x -> R_x``; left matches ``x -> L_x``.

        ``x*y = x*z`` for all ``x`` says exactly ``R_y = R_z``, so this is the
        pairing under which the equivalence holds for every semigroup.
        """
        return (self.right_map_injective == self.right_nondeg
                and self.left_map_injective == self.left_nondeg
                and (not (self.left_nondeg and self.right_nondeg) or self.canonical_injective))

    @property
    def crossed_pairing_holds(self) -> bool:
        """Whether right non-degeneracy also matches injectivity of ``x -> L_x`` here.

        Fails e.g. for left-zero semigroups; reported so callers can see which
        side pairing an instance separates.
        """
        return (self.left_map_injective == self.right_nondeg
                and self.right_map_injective == self.left_nondeg)

    def to_dict(self) -> dict:
        return {
            "left_map_injective": self.left_map_injective,
            "right_map_injective": self.right_map_injective,
            "right_nondeg": self.right_nondeg,
            "left_nondeg": self.left_nondeg,
            "canonical_injective": self.canonical_injective,
            "consistent": self.consistent,
            "crossed_pairing_holds": self.crossed_pairing_holds,
        }


def injectivity_checks(S: FiniteSemigroup) -> InjectivityReport:
    can = canonical_homomorphism(S)
    lefts = [L for L, _ in can]
    rights = [R for _, R in can]
    rep = degeneracy_report(S)
    return InjectivityReport(
        left_map_injective=len(set(lefts)) == len(lefts),
        right_map_injective=len(set(rights)) == len(rights),
        right_nondeg=rep.right_nondeg,
        left_nondeg=rep.left_nondeg,
        canonical_injective=len(set(can)) == len(can),
    )
