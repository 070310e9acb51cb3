"""Exception types shared across the package.

``ValueError`` subclasses describe rejected input; ``RuntimeError``
subclasses signal that a result failed its own re-verification, which can
only happen through a bug.
"""

from __future__ import annotations


class SemigroupError(ValueError):
    """Base class for rejected semigroup input."""


class OutOfRangeEntry(SemigroupError):
    def __init__(self, x: int, y: int, value, n: int):
        self.x, self.y, self.value = x, y, value
        super().__init__(f"table[{x}][{y}] = {value} is outside [0, {n})")


class NotAssociative(SemigroupError):
    def __init__(self, x: int, y: int, z: int):
        self.triple = (x, y, z)
        super().__init__(f"(x*y)*z != x*(y*z) for (x, y, z) = {self.triple}")


class ShapeError(SemigroupError):
    pass


class SgpParseError(SemigroupError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {message}")


class IncompatibleCarrier(ValueError):
    pass


class PreconditionFailed(ValueError):
    """The input does not meet a precondition of the requested construction."""

    def __init__(self, which: str, witness=None):
        self.which, self.witness = which, witness
        msg = which if witness is None else f"{which} (witness: {witness})"
        super().__init__(msg)


class OrderTooLarge(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


class AlgebraError(ValueError):
    pass


class NotCoassociative(AlgebraError):
    def __init__(self, k: int):
        self.k = k
        super().__init__(f"coassociativity fails on basis vector e_{k}")


class InternalVerificationFailed(RuntimeError):
    pass


class HullClosureViolation(InternalVerificationFailed):
    pass


class AlgebraNotAssociative(AlgebraError):
    def __init__(self, i: int, j: int, k: int):
        self.triple = (i, j, k)
        super().__init__(f"(e_i e_j) e_k != e_i (e_j e_k) for (i, j, k) = {self.triple}")


class AlgParseError(AlgebraError):
    pass
