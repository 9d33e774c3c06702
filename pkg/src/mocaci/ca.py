"""Local rules, bipermutivity and the no-boundary cellular automaton map."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .boolfun import BooleanFunction, bits_to_int
from .errors import DimensionError


@dataclass(frozen=True, order=True)
class LocalRule:
    """A diameter-``d`` rule stored by its Wolfram number.

    Bit ``int(x)`` of ``wolfram`` is the rule's value on neighborhood
    ``x = (x_1, ..., x_d)`` with x_1 most significant, so the all-ones
    neighborhood is the most significant bit.
    """

    d: int
    wolfram: int

    def __post_init__(self):
        if self.d < 1:
            raise DimensionError(f"diameter must be positive, got {self.d}")
        if not 0 <= self.wolfram < 1 << (1 << self.d):
            raise ValueError(f"Wolfram number {self.wolfram} out of range for d={self.d}")

    @cached_property
    def table(self) -> np.ndarray:
        t = (self.wolfram >> np.arange(1 << self.d, dtype=object)) & 1
        t = t.astype(np.uint8)
        t.setflags(write=False)
        return t

    def __call__(self, x: Sequence[int]) -> int:
        if len(x) != self.d:
            raise DimensionError(f"rule of diameter {self.d} applied to {len(x)} cells")
        return (self.wolfram >> bits_to_int(x)) & 1

    def value(self, window: int) -> int:
        """Rule value on the neighborhood encoded as an integer."""
        return (self.wolfram >> window) & 1

    def as_function(self) -> BooleanFunction:
        return BooleanFunction(self.d, self.table)

    def complement(self) -> LocalRule:
        return LocalRule(self.d, self.wolfram ^ ((1 << (1 << self.d)) - 1))

    def central_function(self) -> LocalRule:
        """phi with f(x) = x_1 + phi(x_2..x_{d-1}) + x_d; only meaningful if bipermutive."""
        if self.d < 3:
            raise DimensionError("central function needs d >= 3")
        inner = self.d - 2
        w = 0
        for y in range(1 << inner):
            w |= self.value(y << 1) << y
        return LocalRule(inner, w)

    def __str__(self):
        return f"d={self.d} w={self.wolfram}"

    @classmethod
    def parse(cls, text: str) -> LocalRule:
        """Inverse of ``str``: ``'d=5 w=1430476910'``."""
        fields = dict(part.split("=", 1) for part in text.split())
        return cls(int(fields["d"]), int(fields["w"]))


def rule_from_wolfram(w: int, d: int) -> LocalRule:
    return LocalRule(d, w)


def rule_from_table(table: Sequence[int]) -> LocalRule:
    size = len(table)
    if size < 2 or size & (size - 1):
        raise DimensionError(f"rule table of length {size}")
    return LocalRule(size.bit_length() - 1, sum(int(b) << i for i, b in enumerate(table)))


def is_bipermutive(rule: LocalRule) -> bool:
    if rule.d < 2:
        return False
    t = rule.table
    x = np.arange(1 << rule.d)
    first = 1 << (rule.d - 1)
    return bool(np.all(t != t[x ^ first]) and np.all(t != t[x ^ 1]))


def bipermutive_from_central(phi: int, d: int) -> LocalRule:
    """Build x_1 + phi(x_2..x_{d-1}) + x_d from phi's Wolfram number."""
    if d < 3:
        raise DimensionError("bipermutive construction needs d >= 3")
    inner_mask = (1 << (d - 2)) - 1
    w = 0
    for x in range(1 << d):
        bit = (x >> (d - 1)) ^ ((phi >> ((x >> 1) & inner_mask)) & 1) ^ (x & 1)
        w |= bit << x
    return LocalRule(d, w)


@lru_cache(maxsize=None)
def enumerate_bipermutive(d: int) -> tuple[LocalRule, ...]:
    """All 2**(2**(d-2)) bipermutive rules of diameter d, ascending Wolfram number."""
    if d < 3:
        raise DimensionError("bipermutive enumeration needs d >= 3")
    rules = (bipermutive_from_central(phi, d) for phi in range(1 << (1 << (d - 2))))
    return tuple(sorted(rules))


def apply_ca(rule: LocalRule, x: Sequence[int]) -> tuple[int, ...]:
    n = len(x)
    if n < rule.d:
        raise DimensionError(f"input of length {n} shorter than diameter {rule.d}")
    return tuple(rule(x[i:i + rule.d]) for i in range(n - rule.d + 1))


@dataclass(frozen=True)
class CaMap:
    rule: LocalRule
    input_length: int

    def __post_init__(self):
        if self.input_length < self.rule.d:
            raise DimensionError("CA input shorter than the rule diameter")

    @property
    def output_length(self) -> int:
        return self.input_length - self.rule.d + 1

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.input_length:
            raise DimensionError(f"expected {self.input_length} cells, got {len(x)}")
        return apply_ca(self.rule, x)

    def outputs(self) -> np.ndarray:
        """Output (packed big-endian) for every input in ascending int order."""
        n, d = self.input_length, self.rule.d
        z = np.arange(1 << n, dtype=np.int64)
        out = np.zeros_like(z)
        mask = (1 << d) - 1
        table = self.rule.table.astype(np.int64)
        for i in range(self.output_length):
            out = (out << 1) | table[(z >> (n - d - i)) & mask]
        return out


@lru_cache(maxsize=4096)
def square_outputs(rule: LocalRule) -> np.ndarray:
    """CA outputs on all 2**(2(d-1)) inputs of length 2(d-1), packed as ints."""
    out = CaMap(rule, 2 * (rule.d - 1)).outputs()
    out.setflags(write=False)
    return out
