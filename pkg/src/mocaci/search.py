"""Exhaustive enumeration of orthogonal CA pairs and k-MOCA families, and
the classification of the correlation-immune functions they produce.

Orthogonality is tested by brute force over all pairs of bipermutive rules
(Latin-square superposition), and every emitted pair is re-checked by the
de Bruijn path-counting oracle.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .boolfun import algebraic_degree, correlation_immunity_order, nonlinearity, walsh_transform
from .ca import LocalRule, enumerate_bipermutive
from .debruijn import labelings_orthogonal
from .errors import DimensionError, VerificationError
from .latin import are_orthogonal, square_from_ca
from .oa import MocaFamily, binary_expansion_from_moca

log = logging.getLogger(__name__)

# Published classification of 3-MOCA functions, kept for comparison only.
# min_weight entries are literature lower bounds and are never computed here.
REFERENCE_ROWS = {
    4: {"families": 2, "n": 9, "weight": 64, "ci": {3: 2}, "min_weight": 20},
    5: {"families": 36, "n": 12, "weight": 256, "ci": {3: 27, 4: 6}, "min_weight": 24},
}


def candidate_rules(d: int, canonical: bool = False) -> list[LocalRule]:
    """Bipermutive rules of diameter d; ``canonical`` keeps only f(0...0) = 0.

    Complementing a rule permutes the symbols of its Latin square, so it
    preserves orthogonality; the canonical rules pick one rule from each
    complementary pair.
    """
    rules = enumerate_bipermutive(d)
    if canonical:
        rules = tuple(r for r in rules if r.wolfram & 1 == 0)
    return list(rules)


def _pairs_worker(args) -> list[tuple[int, int]]:
    d, canonical, first_indices = args
    rules = candidate_rules(d, canonical)
    squares = [square_from_ca(r) for r in rules]
    out = []
    for i in first_indices:
        for j in range(i + 1, len(rules)):
            if are_orthogonal(squares[i], squares[j]):
                out.append((rules[i].wolfram, rules[j].wolfram))
    return out


def _partition(count: int, jobs: int) -> list[list[int]]:
    # round-robin balances the triangular i < j workload
    return [list(range(w, count, jobs)) for w in range(jobs) if w < count]


def enumerate_oca_pairs(d: int, *, canonical: bool = False, jobs: int = 1,
                        verify: bool = True, cross_check: bool = False) -> list[tuple[int, int]]:
    """All unordered orthogonal pairs of distinct bipermutive rules, sorted.

    With ``verify`` each emitted pair is confirmed by the path-counting
    oracle; ``cross_check`` runs that oracle on every pair and fails on any
    disagreement. The result does not depend on ``jobs``.
    """
    if d < 3:
        raise DimensionError("orthogonal CA need diameter >= 3")
    if d > 5:
        log.warning("d=%d: %d bipermutive rules, exhaustive search will be slow", d, 1 << (1 << (d - 2)))
    rules = candidate_rules(d, canonical)
    parts = _partition(len(rules), max(1, jobs))
    tasks = [(d, canonical, p) for p in parts]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_pairs_worker, tasks))
    else:
        chunks = [_pairs_worker(t) for t in tasks]
    pairs = sorted(p for chunk in chunks for p in chunk)

    if cross_check:
        found = set(pairs)
        for i, f in enumerate(rules):
            for g in rules[i + 1:]:
                if labelings_orthogonal(f, g) != ((f.wolfram, g.wolfram) in found):
                    raise VerificationError(f"oracles disagree on ({f.wolfram}, {g.wolfram})")
    elif verify:
        for fw, gw in pairs:
            if not labelings_orthogonal(LocalRule(d, fw), LocalRule(d, gw)):
                raise VerificationError(f"path-counting oracle rejects ({fw}, {gw})")
    return pairs


def enumerate_moca(d: int, k: int, *, canonical: bool = True, jobs: int = 1,
                   verify: bool = True) -> list[MocaFamily]:
    """All k-sets of pairwise orthogonal bipermutive rules, sorted by rule tuple.

    By default rules are restricted to the canonical ones (f(0...0) = 0), which
    counts families up to complementing individual rules; pass
    ``canonical=False`` for plain unordered sets. Families are grown from the
    pair list by appending rules with a larger Wolfram number.
    """
    if k < 2:
        raise ValueError("family size must be at least 2")
    pairs = enumerate_oca_pairs(d, canonical=canonical, jobs=jobs, verify=verify)
    adjacent: dict[int, set[int]] = {}
    for f, g in pairs:
        adjacent.setdefault(f, set()).add(g)
        adjacent.setdefault(g, set()).add(f)
    families = [tuple(p) for p in pairs]
    for _ in range(k - 2):
        families = [
            fam + (w,)
            for fam in families
            for w in sorted(adjacent.get(fam[-1], ()))
            if w > fam[-1] and all(w in adjacent[v] for v in fam[:-1])
        ]
    return [MocaFamily(d, fam) for fam in sorted(families)]


@dataclass
class FamilyCounts:
    d: int
    k: int
    unordered: int
    canonical: int

    @property
    def ordered(self) -> int:
        return self.unordered * math.factorial(self.k)

    @property
    def canonical_ordered(self) -> int:
        return self.canonical * math.factorial(self.k)


def family_counts(d: int, k: int, jobs: int = 1) -> FamilyCounts:
    """Family counts under each counting convention."""
    unordered = len(enumerate_moca(d, k, canonical=False, jobs=jobs))
    canonical = len(enumerate_moca(d, k, canonical=True, jobs=jobs))
    if canonical << k != unordered:
        raise VerificationError(f"{unordered} families are not {1 << k} x {canonical} complement classes")
    return FamilyCounts(d, k, unordered, canonical)


@dataclass
class FamilyReport:
    family: MocaFamily
    n: int
    weight: int
    ci: int
    nonlinearity: int
    degree: int
    oa_strength: int

    @property
    def degenerate(self) -> bool:
        """Support is the whole space (k = 2): the function is constant one."""
        return self.weight == 1 << self.n


@dataclass
class Classification:
    d: int
    k: int
    reports: list[FamilyReport] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.reports)

    def ci_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(r.ci for r in self.reports).items()))

    def rows(self) -> list[dict]:
        """One aggregated row per (n, weight, CI) combination."""
        groups = Counter((r.n, r.weight, r.ci, r.degenerate) for r in self.reports)
        return [
            {"d": self.d, "families": self.count, "n": n, "weight": w, "ci": ci,
             "count": c, "degenerate": deg}
            for (n, w, ci, deg), c in sorted(groups.items())
        ]

    def render(self) -> str:
        head = f"{'d':>2} {'#fam':>5} {'n':>3} {'w_H':>5} {'CI':>3} {'#CI':>4}"
        lines = [head]
        for row in self.rows():
            tag = "  (constant one)" if row["degenerate"] else ""
            lines.append(f"{row['d']:>2} {row['families']:>5} {row['n']:>3} {row['weight']:>5} "
                         f"{row['ci']:>3} {row['count']:>4}{tag}")
        if not self.reports:
            lines.append(f"{self.d:>2} {0:>5}   -     -   -    -")
        return "\n".join(lines)


def classify_family(family: MocaFamily) -> FamilyReport:
    oa = binary_expansion_from_moca(family)
    f = oa.as_function()
    spectrum = walsh_transform(f)
    ci = correlation_immunity_order(f, spectrum)
    report = FamilyReport(family, f.n, f.weight, ci, nonlinearity(f), algebraic_degree(f), oa.strength)
    if report.oa_strength != ci:
        raise VerificationError(f"{family.rules}: CI order {ci} but support strength {oa.strength}")
    return report


def classify_families(d: int, k: int, *, canonical: bool = True, jobs: int = 1) -> Classification:
    fams = enumerate_moca(d, k, canonical=canonical, jobs=jobs)
    return Classification(d, k, [classify_family(f) for f in fams])

