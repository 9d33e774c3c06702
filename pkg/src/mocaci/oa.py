"""Orthogonal arrays: strength verification, the binary expansion of a MOCA
family, the correlation-immune function it supports, and expurgation."""

from __future__ import annotations

import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from .boolfun import BooleanFunction
from .ca import LocalRule, is_bipermutive, square_outputs
from .errors import DimensionError, PreconditionError, VerificationError
from .latin import are_orthogonal, square_from_ca

log = logging.getLogger(__name__)


def _column_keys(rows: np.ndarray, cols: Sequence[int], s: int) -> np.ndarray:
    keys = np.zeros(rows.shape[0], dtype=np.int64)
    for c in cols:
        keys = keys * s + rows[:, c]
    return keys


def is_balanced(rows: np.ndarray, t: int, s: int = 2) -> bool:
    """Every t-column projection holds each t-tuple equally often."""
    rows = np.asarray(rows, dtype=np.int64)
    n_rows, k = rows.shape
    if t == 0:
        return True
    if t > k or n_rows % s**t:
        return False
    lam = n_rows // s**t
    for cols in combinations(range(k), t):
        counts = np.bincount(_column_keys(rows, cols, s), minlength=s**t)
        if counts.size != s**t or np.any(counts != lam):
            return False
    return True


def strength(rows, s: int = 2) -> int:
    """Largest t <= k such that every t-column selection is balanced.

    Exact counting over all column subsets. Balance at t implies balance at
    every smaller t, so the scan stops at the first failure. An empty array
    is balanced at every t and gets strength k.
    """
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim != 2:
        raise DimensionError(f"expected a 2-D array, got shape {rows.shape}")
    if rows.size and (rows.min() < 0 or rows.max() >= s):
        raise ValueError(f"entries outside 0..{s - 1}")
    k = rows.shape[1]
    t = 0
    while t < k and is_balanced(rows, t + 1, s):
        t += 1
    return t


@dataclass(frozen=True, eq=False)
class OrthogonalArray:
    rows: np.ndarray
    s: int
    strength: int

    def __post_init__(self):
        rows = np.array(self.rows, dtype=np.int64)
        if rows.ndim != 2:
            raise DimensionError(f"expected a 2-D array, got shape {rows.shape}")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def verified(cls, rows, s: int = 2) -> OrthogonalArray:
        rows = np.asarray(rows, dtype=np.int64)
        return cls(rows, s, strength(rows, s))

    @property
    def runs(self) -> int:
        return self.rows.shape[0]

    @property
    def factors(self) -> int:
        return self.rows.shape[1]

    @property
    def index(self) -> int:
        return self.runs // self.s**self.strength

    def __eq__(self, other):
        if not isinstance(other, OrthogonalArray):
            return NotImplemented
        return (self.s, self.strength) == (other.s, other.strength) and np.array_equal(self.rows, other.rows)

    __hash__ = None

    def __repr__(self):
        return f"OA({self.runs}, {self.factors}, {self.s}, {self.strength})"

    def to_text(self) -> str:
        """Header ``N k s t`` followed by N rows of k space-separated symbols."""
        lines = [f"{self.runs} {self.factors} {self.s} {self.strength}"]
        lines += [" ".join(str(int(v)) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> OrthogonalArray:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty OA text")
        n_rows, k, s, t = (int(v) for v in lines[0].split())
        body = lines[1:]
        if len(body) != n_rows:
            raise DimensionError(f"header announces {n_rows} rows, found {len(body)}")
        rows = np.array([[int(v) for v in ln.split()] for ln in body], dtype=np.int64).reshape(n_rows, k)
        oa = cls.verified(rows, s)
        if oa.strength != t:
            raise VerificationError(f"header claims strength {t}, measured {oa.strength}")
        return oa

    def as_function(self) -> BooleanFunction:
        """Binary array rows read as the support of a Boolean function."""
        if self.s != 2:
            raise PreconditionError("only binary arrays define a Boolean function")
        idx = _column_keys(self.rows, range(self.factors), 2)
        table = np.zeros(1 << self.factors, dtype=np.uint8)
        table[idx] = 1
        if int(table.sum()) != self.runs:
            raise VerificationError("array has repeated rows; support would lose weight")
        return BooleanFunction(self.factors, table)


@dataclass(frozen=True)
class MocaFamily:
    """k bipermutive rules of diameter d whose CA are pairwise orthogonal."""

    d: int
    rules: tuple[int, ...]

    def __post_init__(self):
        rules = tuple(sorted(int(w) for w in self.rules))
        object.__setattr__(self, "rules", rules)
        if len(rules) < 2 or len(set(rules)) != len(rules):
            raise PreconditionError("a family needs at least two distinct rules")
        local = self.local_rules()
        for r in local:
            if not is_bipermutive(r):
                raise PreconditionError(f"rule {r} is not bipermutive")
        squares = [square_from_ca(r) for r in local]
        for i, j in combinations(range(len(squares)), 2):
            if not are_orthogonal(squares[i], squares[j]):
                raise PreconditionError(f"rules {rules[i]} and {rules[j]} are not orthogonal")

    @property
    def k(self) -> int:
        return len(self.rules)

    @property
    def b(self) -> int:
        return self.d - 1

    def local_rules(self) -> list[LocalRule]:
        return [LocalRule(self.d, w) for w in self.rules]

    def to_record(self) -> str:
        return json.dumps({"d": self.d, "k": self.k, "rules": list(self.rules)})

    @classmethod
    def from_record(cls, record: str | dict) -> MocaFamily:
        data = json.loads(record) if isinstance(record, str) else record
        fam = cls(int(data["d"]), tuple(data["rules"]))
        if "k" in data and int(data["k"]) != fam.k:
            raise DimensionError(f"record says k={data['k']} but lists {fam.k} rules")
        return fam


def binary_expansion_from_moca(family: MocaFamily) -> OrthogonalArray:
    """Rows (F_1(z), ..., F_k(z)) for every CA input z of length 2b, ascending z."""
    b = family.b
    shifts = np.arange(b - 1, -1, -1)
    blocks = [(square_outputs(r)[:, None] >> shifts) & 1 for r in family.local_rules()]
    oa = OrthogonalArray.verified(np.hstack(blocks), 2)
    if oa.strength < 2:
        raise VerificationError(f"expansion of {family.rules} has strength {oa.strength} < 2")
    return oa


def ci_function_from_moca(family: MocaFamily) -> BooleanFunction:
    """The kb-variable function supported on the binary expansion; weight 2**(2b)."""
    f = binary_expansion_from_moca(family).as_function()
    if f.weight != 1 << (2 * family.b):
        raise VerificationError(f"weight {f.weight}, expected {1 << (2 * family.b)}")
    return f


def _smallest_sub_oa(rows: np.ndarray, t: int, s: int, node_limit: int | None) -> np.ndarray | None:
    """Row mask of a smallest proper subset that is still balanced at strength t.

    Binary variables z_r select rows; an integer lam' in [1, lam - 1] is the
    new index; each (column set, tuple) cell must hold exactly lam' selected
    rows. Returns None when no proper sub-array exists (or none was found
    within the node limit).
    """
    n_rows, k = rows.shape
    cells = s**t
    lam = n_rows // cells
    if lam <= 1:
        return None
    data_rows, data_cols = [], []
    r = np.arange(n_rows)
    for ci, cols in enumerate(combinations(range(k), t)):
        data_rows.append(ci * cells + _column_keys(rows, cols, s))
        data_cols.append(r)
    n_cons = (ci + 1) * cells
    a = sparse.coo_matrix(
        (np.ones(n_rows * (ci + 1)), (np.concatenate(data_rows), np.concatenate(data_cols))),
        shape=(n_cons, n_rows),
    )
    a = sparse.hstack([a, sparse.coo_matrix(-np.ones((n_cons, 1)))]).tocsr()
    cost = np.r_[np.ones(n_rows), 0.0]
    bounds = Bounds(np.r_[np.zeros(n_rows), 1], np.r_[np.ones(n_rows), lam - 1])
    options = {"node_limit": node_limit} if node_limit else {}
    res = milp(cost, constraints=LinearConstraint(a, 0, 0), integrality=np.ones(n_rows + 1),
               bounds=bounds, options=options)
    if res.x is None:
        log.debug("no sub-array: %s", res.message)
        return None
    return res.x[:n_rows] > 0.5


def expurgate(array: OrthogonalArray, target_t: int, budget: int = 4,
              node_limit: int | None = 20000) -> OrthogonalArray:
    """Drop rows while keeping strength >= target_t; best effort, no optimality claim.

    Each round solves a small integer program for the smallest balanced
    sub-array of the current rows and keeps it if it is smaller. ``budget``
    caps the number of rounds, ``node_limit`` the branch-and-bound nodes per
    round. Returns the input unchanged if nothing can be removed.
    """
    if target_t < 1:
        raise PreconditionError("target strength must be at least 1")
    if array.strength < target_t:
        raise PreconditionError(f"array strength {array.strength} below target {target_t}")
    current = array
    for _ in range(budget):
        mask = _smallest_sub_oa(current.rows, target_t, current.s, node_limit)
        if mask is None or mask.sum() >= current.runs:
            break
        candidate = OrthogonalArray.verified(current.rows[mask], current.s)
        if candidate.strength < target_t:
            raise VerificationError(f"sub-array re-verified at strength {candidate.strength}")
        current = candidate
    return current
