"""Latin squares induced by bipermutive CA, orthogonality, and MOLS -> OA."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .boolfun import bits_to_int, int_to_bits
from .ca import LocalRule, is_bipermutive, square_outputs
from .errors import DimensionError, PreconditionError, VerificationError


def index_bijection(v: Sequence[int]) -> int:
    """Map a b-bit vector to 1..2**b (all-zeros -> 1)."""
    return bits_to_int(v) + 1


def index_to_vector(i: int, b: int) -> tuple[int, ...]:
    if not 1 <= i <= 1 << b:
        raise ValueError(f"index {i} outside 1..{1 << b}")
    return int_to_bits(i - 1, b)


@dataclass(frozen=True, eq=False)
class LatinSquare:
    """N x N square over symbols 1..N; ``entries[r-1, c-1]`` is L(r, c)."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=np.int64)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise DimensionError(f"square expected, got shape {e.shape}")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __call__(self, r: int, c: int) -> int:
        return int(self.entries[r - 1, c - 1])

    def __eq__(self, other):
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    __hash__ = None

    def is_latin(self) -> bool:
        target = np.arange(1, self.order + 1)
        e = self.entries
        return bool(
            np.array_equal(np.sort(e, axis=1), np.broadcast_to(target, e.shape))
            and np.array_equal(np.sort(e, axis=0), np.broadcast_to(target[:, None], e.shape))
        )

    def format(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)

    @classmethod
    def parse(cls, text: str) -> LatinSquare:
        return cls(np.array([[int(v) for v in line.split()] for line in text.strip().splitlines()]))


def square_from_ca(rule: LocalRule) -> LatinSquare:
    """Square of order 2**(d-1): the left half of the CA input picks the row,
    the right half the column, the CA output the symbol."""
    if not is_bipermutive(rule):
        raise PreconditionError(f"rule {rule} is not bipermutive")
    n = 1 << (rule.d - 1)
    square = LatinSquare(square_outputs(rule).reshape(n, n) + 1)
    if not square.is_latin():
        raise VerificationError(f"bipermutive rule {rule} produced a non-Latin square")
    return square


def are_orthogonal(l1: LatinSquare, l2: LatinSquare) -> bool:
    if l1.order != l2.order:
        raise DimensionError(f"orders {l1.order} and {l2.order} differ")
    n = l1.order
    pairs = (l1.entries - 1) * n + (l2.entries - 1)
    return bool(np.bincount(pairs.ravel(), minlength=n * n).max() == 1)


def mols_to_oa(squares: Sequence[LatinSquare]):
    """Linearize k MOLS of order N (row-major) into an OA(N^2, k, N, 2).

    Symbols are shifted to 0..N-1 to fit the OrthogonalArray convention.
    """
    from .oa import OrthogonalArray

    if len(squares) < 2:
        raise PreconditionError("need at least two squares")
    n = squares[0].order
    for i in range(len(squares)):
        for j in range(i + 1, len(squares)):
            if not are_orthogonal(squares[i], squares[j]):
                raise PreconditionError(f"squares {i} and {j} are not orthogonal")
    rows = np.stack([sq.entries.ravel() - 1 for sq in squares], axis=1)
    oa = OrthogonalArray.verified(rows, n)
    if oa.strength != 2 or oa.index != 1:
        raise VerificationError(f"MOLS array has strength {oa.strength}, index {oa.index}")
    return oa
