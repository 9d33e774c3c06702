"""Coupled labelings of the binary de Bruijn graph and label-path counting.

Vertices of G(2, b) are b-bit words stored as ints (first bit most
significant). The edge u -> v exists when u's last b-1 bits equal v's first
b-1 bits; it is identified by its fusion word u+v[-1], a (b+1)-bit int,
and carries the tuple of rule values on that word.

A CA input of length 2b traces the b+1 overlapping b-windows it contains, so
it is a path of b edges, and the label sequence of component i along it is
the CA output of rule i.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product

import numpy as np

from .boolfun import int_to_bits
from .ca import LocalRule, is_bipermutive
from .errors import DimensionError, NotAnEdgeError, PreconditionError

WILDCARD = "*"


def fusion(u, v):
    """u extended by the last coordinate of v. Strings in, string out."""
    as_str = isinstance(u, str)
    uu, vv = tuple(u), tuple(v)
    if len(uu) != len(vv) or not uu:
        raise DimensionError("vertices must be non-empty words of equal length")
    if uu[1:] != vv[:-1]:
        raise NotAnEdgeError(f"{u} -> {v} is not an edge")
    fused = uu + vv[-1:]
    return "".join(fused) if as_str else fused


@dataclass(frozen=True, eq=False)
class CoupledLabeling:
    b: int
    rules: tuple[LocalRule, ...]
    labels: np.ndarray  # labels[i, u, bit]: rule i on fusion word (u << 1) | bit

    @property
    def k(self) -> int:
        return len(self.rules)

    @property
    def vertex_count(self) -> int:
        return 1 << self.b

    def successor(self, u: int, bit: int) -> int:
        return ((u << 1) | bit) & (self.vertex_count - 1)

    def edges(self) -> list[tuple[int, int, tuple[int, ...]]]:
        """(u, v, label tuple) for every edge, ordered by fusion word."""
        return [
            (w >> 1, w & (self.vertex_count - 1), tuple(int(x) for x in self.labels[:, w >> 1, w & 1]))
            for w in range(1 << (self.b + 1))
        ]

    def label(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        w = fusion(tuple(u), tuple(v))
        word = int("".join(str(x) for x in w), 2)
        return tuple(int(x) for x in self.labels[:, word >> 1, word & 1])

    def dump(self) -> str:
        """One line per edge: ``uu -> vv : l_1,...,l_k``."""
        b = self.b
        lines = []
        for u, v, lab in self.edges():
            uu = "".join(map(str, int_to_bits(u, b)))
            vv = "".join(map(str, int_to_bits(v, b)))
            lines.append(f"{uu} -> {vv} : {','.join(map(str, lab))}")
        return "\n".join(lines)


def parse_labeling_dump(text: str) -> dict[tuple[str, str], tuple[int, ...]]:
    out = {}
    for line in text.strip().splitlines():
        edge, labels = line.split(":")
        u, v = (s.strip() for s in edge.split("->"))
        out[(u, v)] = tuple(int(x) for x in labels.split(","))
    return out


def build_labeling(rules: Sequence[LocalRule]) -> CoupledLabeling:
    rules = tuple(rules)
    if not rules:
        raise ValueError("need at least one rule")
    d = rules[0].d
    if any(r.d != d for r in rules):
        raise DimensionError("rules have different diameters")
    b = d - 1
    words = np.arange(1 << d)
    labels = np.stack([r.table[words].reshape(1 << b, 2) for r in rules]).astype(np.uint8)
    labels.setflags(write=False)
    return CoupledLabeling(b, rules, labels)


def _normalize_pattern(lab: CoupledLabeling, pattern) -> list[list[int | None]]:
    if len(pattern) != lab.k:
        raise DimensionError(f"pattern has {len(pattern)} components, labeling has {lab.k}")
    out = []
    for comp in pattern:
        if len(comp) != lab.b:
            raise DimensionError(f"pattern component of length {len(comp)}, expected {lab.b}")
        out.append([None if c in (WILDCARD, None) else int(c) for c in comp])
    return out


def count_paths_with_label(lab: CoupledLabeling, pattern) -> int:
    """Number of b-edge paths whose label sequences match ``pattern``.

    ``pattern`` holds one length-b sequence per rule over {0, 1, '*'}
    (e.g. ``("1*", "01")``). Counted by DP over path prefixes.
    """
    pat = _normalize_pattern(lab, pattern)
    nv = lab.vertex_count
    u = np.arange(nv)
    counts = np.ones(nv, dtype=np.int64)
    for j in range(lab.b):
        nxt = np.zeros(nv, dtype=np.int64)
        for bit in (0, 1):
            ok = np.ones(nv, dtype=bool)
            for i, comp in enumerate(pat):
                if comp[j] is not None:
                    ok &= lab.labels[i, :, bit] == comp[j]
            np.add.at(nxt, ((u << 1) | bit)[ok] & (nv - 1), counts[ok])
        counts = nxt
    return int(counts.sum())


def path_label_counts(lab: CoupledLabeling) -> np.ndarray:
    """Path counts for every fully fixed pattern at once.

    Entry ``sum_i x_i << (b (k-1-i))`` counts the paths labeled
    (x_1, ..., x_k), each x_i a b-bit word.
    """
    k, b, nv = lab.k, lab.b, lab.vertex_count
    code = np.zeros((nv, 2), dtype=np.int64)
    for i in range(k):
        code = (code << 1) | lab.labels[i]
    u = np.arange(nv)
    # state[p, u]: prefixes ending at u whose step-major label code is p
    state = np.ones((1, nv), dtype=np.int64)
    for _ in range(b):
        nxt = np.zeros((state.shape[0] << k, nv), dtype=np.int64)
        p = np.arange(state.shape[0])[:, None]
        for bit in (0, 1):
            rows = (p << k) | code[:, bit][None, :]
            cols = np.broadcast_to(((u << 1) | bit) & (nv - 1), rows.shape)
            np.add.at(nxt, (rows, cols), state)
        state = nxt
    step_major = state.sum(axis=1)
    # reorder step-major (l_{1,1}..l_{k,1}, l_{1,2}, ...) to component-major
    idx = np.arange(1 << (k * b))
    comp = np.zeros_like(idx)
    for j in range(b):
        for i in range(k):
            bit = (idx >> (k * (b - 1 - j) + (k - 1 - i))) & 1
            comp |= bit << (b * (k - 1 - i) + (b - 1 - j))
    out = np.empty_like(step_major)
    out[comp] = step_major
    return out


def labelings_orthogonal(f: LocalRule, g: LocalRule) -> bool:
    """Every pair (x, y) of b-bit words labels exactly one path."""
    for r in (f, g):
        if not is_bipermutive(r):
            raise PreconditionError(f"rule {r} is not bipermutive")
    if f.d != g.d:
        raise DimensionError("rules have different diameters")
    return bool(np.all(path_label_counts(build_labeling((f, g))) == 1))


def all_patterns(k: int, b: int, alphabet: str = "01*"):
    """Every k-tuple of length-b words over ``alphabet``."""
    words = ["".join(w) for w in product(alphabet, repeat=b)]
    return product(words, repeat=k)
