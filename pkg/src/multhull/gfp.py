"""Exact linear algebra over prime fields GF(p).

Matrices are integer numpy arrays reduced mod p. Elimination is plain
Gauss-Jordan; p is small, so int64 never overflows between reductions.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, List, Tuple

import numpy as np

SUPPORTED_PRIMES = (2, 3, 5, 7)


def check_prime(p: int) -> None:
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"p={p} is not a supported prime {SUPPORTED_PRIMES}")


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(a, p - 2, p)


def rref(A, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    M = np.array(A, dtype=np.int64) % p
    if M.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = M.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = (M[r] * inv_mod(int(M[r, c]), p)) % p
        factors = M[:, c].copy()
        factors[r] = 0
        M = (M - np.outer(factors, M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A, p: int) -> int:
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` as rows, one per free column, in column order."""
    A = np.array(A, dtype=np.int64)
    ncols = A.shape[1]
    R, pivots = rref(A, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for b, fc in enumerate(free):
        basis[b, fc] = 1
        for i, pc in enumerate(pivots):
            basis[b, pc] = (-R[i, fc]) % p
    return basis


def verify_nullspace(A, basis: np.ndarray, p: int) -> bool:
    """Every basis row solves ``A x = 0`` and the rows are independent."""
    A = np.array(A, dtype=np.int64)
    if len(basis) == 0:
        return True
    if ((A @ basis.T) % p).any():
        return False
    return rank(basis, p) == len(basis)


def span(basis: np.ndarray, p: int) -> Iterator[np.ndarray]:
    """Every GF(p)-combination of the rows of ``basis`` (``p**len(basis)`` vectors)."""
    k = len(basis)
    ncols = basis.shape[1] if basis.ndim == 2 else 0
    for coeffs in product(range(p), repeat=k):
        if k == 0:
            yield np.zeros(ncols, dtype=np.int64)
        else:
            yield (np.asarray(coeffs, dtype=np.int64) @ basis) % p


def matmul(A, B, p: int) -> np.ndarray:
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def all_vectors(p: int, d: int) -> np.ndarray:
    """All ``p**d`` vectors in coordinate-lexicographic order (first coordinate slowest)."""
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(p), repeat=d)), dtype=np.int64)


def vector_index(v, p: int) -> int:
    idx = 0
    for x in v:
        idx = idx * p + int(x)
    return idx


def vector_indices(V: np.ndarray, p: int) -> np.ndarray:
    """Row-wise :func:`vector_index` for a stack of vectors (last axis)."""
    d = V.shape[-1]
    w = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return V @ w
