"""Boolean functions as truth tables, with Walsh spectrum, ANF and the
cryptographic properties derived from them.

Bit order used everywhere in the package: an input x = (x_1, ..., x_n) sits
at table position int(x) = sum_j x_j * 2**(n - j), so x_1 is the most
significant bit and position 0 is the all-zeros input.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, PreconditionError

MAX_VARIABLES = 16


def _frozen(arr: np.ndarray, dtype) -> np.ndarray:
    out = np.array(arr, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def popcounts(n: int) -> np.ndarray:
    """Hamming weight of every n-bit index, as an int array of length 2**n."""
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)


def bits_to_int(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | (int(b) & 1)
    return value


def int_to_bits(value: int, width: int) -> tuple[int, ...]:
    return tuple((value >> (width - 1 - j)) & 1 for j in range(width))


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    n: int
    table: np.ndarray

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VARIABLES:
            raise DimensionError(f"n={self.n} outside 0..{MAX_VARIABLES}")
        table = np.asarray(self.table)
        if table.shape != (1 << self.n,):
            raise DimensionError(f"truth table of length {table.size} for n={self.n}")
        if table.size and not np.isin(table, (0, 1)).all():
            raise ValueError("truth table entries must be 0 or 1")
        object.__setattr__(self, "table", _frozen(table, np.uint8))

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __repr__(self):
        return f"BooleanFunction(n={self.n}, weight={self.weight})"

    def __call__(self, x: Sequence[int]) -> int:
        if len(x) != self.n:
            raise DimensionError(f"expected {self.n} inputs, got {len(x)}")
        return int(self.table[bits_to_int(x)])

    @property
    def weight(self) -> int:
        return int(self.table.sum(dtype=np.int64))

    def support(self) -> np.ndarray:
        """Support as a (weight, n) 0/1 matrix, rows in ascending int order."""
        idx = np.flatnonzero(self.table)
        shifts = np.arange(self.n - 1, -1, -1)
        return ((idx[:, None] >> shifts) & 1).astype(np.uint8)

    @classmethod
    def constant(cls, n: int, value: int) -> BooleanFunction:
        return cls(n, np.full(1 << n, value & 1, dtype=np.uint8))

    @classmethod
    def from_binary_string(cls, text: str) -> BooleanFunction:
        text = text.strip()
        size = len(text)
        if size == 0 or size & (size - 1):
            raise DimensionError(f"length {size} is not a power of two")
        if set(text) - {"0", "1"}:
            raise ValueError("binary truth table may only contain '0' and '1'")
        table = np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")
        return cls(size.bit_length() - 1, table)

    def to_binary_string(self) -> str:
        return (self.table + ord("0")).tobytes().decode()

    @classmethod
    def from_hex(cls, text: str) -> BooleanFunction:
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        nbits = 4 * len(text)
        if nbits < 4 or nbits & (nbits - 1):
            raise DimensionError(f"{len(text)} hex digits do not encode 2**n bits with n >= 2")
        bits = "".join(format(int(c, 16), "04b") for c in text)
        return cls.from_binary_string(bits)

    def to_hex(self) -> str:
        if self.n < 2:
            raise DimensionError("hex form needs at least 4 table bits (n >= 2)")
        s = self.to_binary_string()
        return "".join(format(int(s[i:i + 4], 2), "x") for i in range(0, len(s), 4))


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values, np.int64))

    def __getitem__(self, a: int) -> int:
        return int(self.values[a])

    def __eq__(self, other):
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    __hash__ = None

    def max_abs(self) -> int:
        return int(np.abs(self.values).max())


@dataclass(frozen=True, eq=False)
class AnfPolynomial:
    n: int
    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _frozen(self.coefficients, np.uint8))

    def monomials(self) -> list[tuple[int, ...]]:
        """Exponent vectors u with a_u = 1."""
        return [int_to_bits(int(u), self.n) for u in np.flatnonzero(self.coefficients)]

    def evaluate(self, x: Sequence[int]) -> int:
        xi = bits_to_int(x)
        # x^u = 1 iff u is covered by x
        us = np.flatnonzero(self.coefficients)
        return int(np.count_nonzero((us & ~xi) == 0) & 1)

    def degree(self) -> int:
        us = np.flatnonzero(self.coefficients)
        if us.size == 0:
            return 0
        return int(np.bitwise_count(us.astype(np.uint32)).max())


def function_from_support(n: int, rows: Iterable[Sequence[int]]) -> BooleanFunction:
    """The function whose support is exactly ``rows``."""
    table = np.zeros(1 << n, dtype=np.uint8)
    count = 0
    for row in rows:
        if len(row) != n:
            raise DimensionError(f"support row of length {len(row)}, expected {n}")
        table[bits_to_int(row)] = 1
        count += 1
    if table.sum() != count:
        raise PreconditionError("support rows are not distinct")
    return BooleanFunction(n, table)


def _signs(f: BooleanFunction) -> np.ndarray:
    return 1 - 2 * f.table.astype(np.int64)


def walsh_transform(f: BooleanFunction) -> WalshSpectrum:
    """Fast Walsh-Hadamard butterfly, O(n 2^n)."""
    w = _signs(f)
    h = 1
    while h < w.size:
        w = w.reshape(-1, 2, h)
        w = np.stack((w[:, 0] + w[:, 1], w[:, 0] - w[:, 1]), axis=1).reshape(-1)
        h <<= 1
    return WalshSpectrum(f.n, w)


def naive_walsh_many(tables: np.ndarray, n: int, block: int = 1024) -> np.ndarray:
    """Direct double sum W(a) = sum_x (-1)^(f(x) + a.x) for a batch of tables.

    ``tables`` has shape (m, 2**n); returns an int64 array of the same shape.
    The sign matrix is built block by block from popcount parities; the
    float32 product is exact because every partial sum stays below 2**24.
    """
    tables = np.atleast_2d(np.asarray(tables))
    size = 1 << n
    if tables.shape[1] != size:
        raise DimensionError(f"tables of width {tables.shape[1]}, expected {size}")
    s = (1.0 - 2.0 * tables.astype(np.float32)).T
    x = np.arange(size, dtype=np.uint32)
    out = np.empty((size, tables.shape[0]), dtype=np.int64)
    for start in range(0, size, block):
        a = x[start:start + block]
        parity = np.bitwise_count(a[:, None] & x[None, :]) & 1
        signs = 1.0 - 2.0 * parity.astype(np.float32)
        out[start:start + block] = np.rint(signs @ s).astype(np.int64)
    return out.T


def walsh_transform_naive(f: BooleanFunction) -> WalshSpectrum:
    """Reference O(4^n) evaluation of the Walsh transform."""
    return WalshSpectrum(f.n, naive_walsh_many(f.table[None, :], f.n)[0])


def nonlinearity(f: BooleanFunction) -> int:
    return ((1 << f.n) - walsh_transform(f).max_abs()) // 2


def moebius(table: np.ndarray) -> np.ndarray:
    """Binary Moebius transform; an involution on 0/1 vectors of length 2**n."""
    a = np.array(table, dtype=np.uint8).reshape(-1)
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        a[:, 1] ^= a[:, 0]
        a = a.reshape(-1)
        h <<= 1
    return a


def anf(f: BooleanFunction) -> AnfPolynomial:
    return AnfPolynomial(f.n, moebius(f.table))


def anf_to_function(p: AnfPolynomial) -> BooleanFunction:
    return BooleanFunction(p.n, moebius(p.coefficients))


def algebraic_degree(f: BooleanFunction) -> int:
    return anf(f).degree()


def correlation_immunity_order(f: BooleanFunction, spectrum: WalshSpectrum | None = None) -> int:
    """Largest t with W_f(a) = 0 for every 1 <= wt(a) <= t.

    Constant functions get order n.
    """
    w = (spectrum or walsh_transform(f)).values
    weights = popcounts(f.n)
    nonzero = weights[(w != 0) & (weights > 0)]
    if nonzero.size == 0:
        return f.n
    return int(nonzero.min()) - 1
